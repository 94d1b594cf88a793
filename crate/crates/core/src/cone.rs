//! Rational polyhedral cones in canonical double description.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{clear_denominators, dot, primitive_raw, rank, rref, to_q};
use crate::linalg::{LatticeVector, Side};

/// Largest ambient rank accepted by cone constructors.
pub const MAX_CONE_RANK: usize = 6;

/// A rational polyhedral cone in M_R or N_R, stored in both descriptions.
///
/// * `lineality`: RREF basis of the lineality space, rows scaled to
///   primitive integer vectors;
/// * `rays`: primitive extreme rays of the pointed part, each projected
///   orthogonally onto the complement of the lineality space, sorted;
/// * `equations` and `facets`: the same data for the dual cone.
///
/// Two cones are equal exactly when they are equal as sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    rank: usize,
    side: Side,
    lineality: Vec<Vec<BigInt>>,
    rays: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

impl RationalCone {
    /// The cone generated by `gens`. An empty list gives the zero cone.
    pub fn from_generators(side: Side, rank: usize, gens: &[LatticeVector]) -> Result<Self> {
        check_rank(rank)?;
        let raw = check_vectors(side, rank, gens)?;
        Ok(Self::from_raw_generators(side, rank, &raw))
    }

    /// The cone {x : ⟨a, x⟩ ≥ 0 for all a in `ineqs`}; the inequalities live
    /// in the dual lattice. An empty list gives the whole space.
    pub fn from_inequalities(side: Side, rank: usize, ineqs: &[LatticeVector]) -> Result<Self> {
        check_rank(rank)?;
        let raw = check_vectors(side.dual(), rank, ineqs)?;
        Ok(Self::from_raw_generators(side.dual(), rank, &raw).dual())
    }

    pub fn from_i64_generators(side: Side, gens: &[&[i64]]) -> Result<Self> {
        let rank = gens
            .first()
            .map(|g| g.len())
            .ok_or_else(|| Error::EmptyInput("cannot infer the rank from an empty generator list".into()))?;
        let vs: Vec<LatticeVector> = gens.iter().map(|g| LatticeVector::from_i64(side, g)).collect();
        Self::from_generators(side, rank, &vs)
    }

    pub(crate) fn from_raw_generators(side: Side, rank: usize, gens: &[Vec<BigInt>]) -> Self {
        let (dlin, drays) = double_description(rank, gens);
        let (equations, facets) = canonical(rank, dlin, drays);
        let (lin, rays) = double_description(rank, &with_negatives(&equations, &facets));
        let (lineality, rays) = canonical(rank, lin, rays);
        RationalCone {
            rank,
            side,
            lineality,
            rays,
            equations,
            facets,
        }
    }

    pub(crate) fn from_raw_inequalities(side: Side, rank: usize, ineqs: &[Vec<BigInt>]) -> Self {
        Self::from_raw_generators(side.dual(), rank, ineqs).dual()
    }

    pub fn zero(side: Side, rank: usize) -> Self {
        Self::from_raw_generators(side, rank, &[])
    }

    pub fn full(side: Side, rank: usize) -> Self {
        Self::zero(side.dual(), rank).dual()
    }

    /// The ray R≥0·v (the zero cone when v = 0).
    pub fn ray(v: &LatticeVector) -> Self {
        Self::from_raw_generators(v.side(), v.rank(), &[v.coords().to_vec()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn side(&self) -> Side {
        self.side
    }

    fn wrap(&self, side: Side, v: &[Vec<BigInt>]) -> Vec<LatticeVector> {
        v.iter().map(|c| LatticeVector::from_raw(side, c.clone())).collect()
    }

    pub fn lineality(&self) -> Vec<LatticeVector> {
        self.wrap(self.side, &self.lineality)
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        self.wrap(self.side, &self.rays)
    }

    pub fn equations(&self) -> Vec<LatticeVector> {
        self.wrap(self.side.dual(), &self.equations)
    }

    pub fn facets(&self) -> Vec<LatticeVector> {
        self.wrap(self.side.dual(), &self.facets)
    }

    pub(crate) fn raw_lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub(crate) fn raw_rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub(crate) fn raw_equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub(crate) fn raw_facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Canonical generators: ± the lineality basis together with the rays,
    /// sorted.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let mut g = with_negatives(&self.lineality, &self.rays);
        g.sort();
        self.wrap(self.side, &g)
    }

    /// Canonical inequalities: ± the equations together with the facet
    /// normals, sorted.
    pub fn inequalities(&self) -> Vec<LatticeVector> {
        let mut g = with_negatives(&self.equations, &self.facets);
        g.sort();
        self.wrap(self.side.dual(), &g)
    }

    pub fn dual(&self) -> Self {
        RationalCone {
            rank: self.rank,
            side: self.side.dual(),
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            equations: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.equations.is_empty() && self.facets.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    fn check_member(&self, x: &LatticeVector) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: x.rank(),
            });
        }
        if x.side() != self.side {
            return Err(Error::SideMismatch(format!(
                "cone lives in {} but the vector lives in {}",
                self.side,
                x.side()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, x: &LatticeVector) -> Result<bool> {
        self.check_member(x)?;
        Ok(self.contains_raw(x.coords()))
    }

    pub(crate) fn contains_raw(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero()) && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Membership in the relative interior.
    pub fn relint_contains(&self, x: &LatticeVector) -> Result<bool> {
        self.check_member(x)?;
        Ok(self.relint_contains_raw(x.coords()))
    }

    pub(crate) fn relint_contains_raw(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero()) && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if self.side != other.side {
            return Err(Error::SideMismatch(format!(
                "cones live in {} and {}",
                self.side, other.side
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut ineqs = with_negatives(&self.equations, &self.facets);
        ineqs.extend(with_negatives(&other.equations, &other.facets));
        Ok(Self::from_raw_inequalities(self.side, self.rank, &ineqs))
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut gens = with_negatives(&self.lineality, &self.rays);
        gens.extend(with_negatives(&other.lineality, &other.rays));
        Ok(Self::from_raw_generators(self.side, self.rank, &gens))
    }

    /// Whether `other` ⊆ `self`.
    pub fn contains_cone(&self, other: &Self) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(with_negatives(&other.lineality, &other.rays)
            .iter()
            .all(|g| self.contains_raw(g)))
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Self) -> Result<bool> {
        if !other.contains_cone(self)? {
            return Ok(false);
        }
        // A subcone is a face iff it equals other ∩ {u = 0} for a valid u;
        // take u = sum of the inequalities of `other` vanishing on `self`.
        let gens = with_negatives(&self.lineality, &self.rays);
        let tight: Vec<&Vec<BigInt>> = other
            .facets
            .iter()
            .filter(|f| gens.iter().all(|g| dot(f, g).is_zero()))
            .collect();
        let mut ineqs = with_negatives(&other.equations, &other.facets);
        for f in tight {
            ineqs.push(f.iter().map(|x| -x).collect());
        }
        let face = Self::from_raw_inequalities(other.side, other.rank, &ineqs);
        Ok(&face == self)
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone in {}_R^{} generated by [", self.side, self.rank)?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::EmptyInput("cone of rank 0".into()));
    }
    if rank > MAX_CONE_RANK {
        return Err(Error::RankLimit {
            rank,
            limit: MAX_CONE_RANK,
        });
    }
    Ok(())
}

fn check_vectors(side: Side, rank: usize, vs: &[LatticeVector]) -> Result<Vec<Vec<BigInt>>> {
    vs.iter()
        .map(|v| {
            if v.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: v.rank(),
                });
            }
            if v.side() != side {
                return Err(Error::SideMismatch(format!(
                    "expected a vector of {side}, got one of {}",
                    v.side()
                )));
            }
            Ok(v.coords().to_vec())
        })
        .collect()
}

pub(crate) fn with_negatives(lin: &[Vec<BigInt>], rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(2 * lin.len() + rays.len());
    for l in lin {
        out.push(l.clone());
        out.push(l.iter().map(|x| -x).collect());
    }
    out.extend(rays.iter().cloned());
    out
}

/// Canonical form of a (lineality basis, rays) pair: RREF lineality with
/// primitive rows, rays projected onto the orthogonal complement of the
/// lineality space, made primitive, deduplicated and sorted.
fn canonical(n: usize, lin: Vec<Vec<BigInt>>, rays: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let q: Vec<Vec<BigRational>> = lin.iter().map(|r| to_q(r)).collect();
    let (r, _) = rref(&q, n);
    let lin: Vec<Vec<BigInt>> = r.iter().map(|row| clear_denominators(row)).collect();

    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(rays.len());
    for ray in rays {
        let p = project_off(&lin, &ray);
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        out.push(p);
    }
    out.sort();
    out.dedup();
    (lin, out)
}

/// Orthogonal projection of `x` onto the complement of span(`basis`),
/// scaled to a primitive integer vector.
fn project_off(basis: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    if basis.is_empty() {
        return primitive_raw(x);
    }
    let k = basis.len();
    // Solve G c = B x with G = B Bᵀ.
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| BigRational::from_integer(dot(&basis[i], &basis[j])))
                .collect();
            row.push(BigRational::from_integer(dot(&basis[i], x)));
            row
        })
        .collect();
    let (r, _) = rref(&aug, k + 1);
    aug = r;
    let mut p: Vec<BigRational> = to_q(x);
    for (i, row) in aug.iter().enumerate() {
        let c = &row[k];
        for (pj, bj) in p.iter_mut().zip(&basis[i]) {
            *pj -= c * BigRational::from_integer(bj.clone());
        }
    }
    clear_denominators(&p)
}

struct DdRay {
    v: Vec<BigInt>,
    tight: Vec<usize>,
}

/// Double description: the lineality basis and extreme rays of
/// {x ∈ Rⁿ : ⟨a, x⟩ ≥ 0 for all a in `constraints`}.
pub(crate) fn double_description(n: usize, constraints: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lin: Vec<Vec<BigInt>> = crate::lattice::identity(n);
    let mut rays: Vec<DdRay> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.tight.push(k);
            }
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.swap_remove(pos);
            let mut c = dot(a, &l);
            if c.is_negative() {
                l = l.iter().map(|x| -x).collect();
                c = -c;
            }
            let fix = |x: &[BigInt]| -> Vec<BigInt> {
                let t = dot(a, x);
                primitive_raw(&x.iter().zip(&l).map(|(xi, li)| &c * xi - &t * li).collect::<Vec<_>>())
            };
            for other in lin.iter_mut() {
                *other = fix(other);
            }
            for r in rays.iter_mut() {
                r.v = fix(&r.v);
                r.tight.push(k);
            }
            rays.push(DdRay {
                v: primitive_raw(&l),
                tight: (0..k).collect(),
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let target = n - lin.len();
        let mut next: Vec<DdRay> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            let mut tight = r.tight.clone();
            if vals[i].is_zero() {
                tight.push(k);
            }
            next.push(DdRay { v: r.v.clone(), tight });
        }
        for (i, p) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> = p.tight.iter().copied().filter(|t| q.tight.contains(t)).collect();
                if target < 2 {
                    continue;
                }
                let rows: Vec<Vec<BigInt>> = common.iter().map(|&t| constraints[t].clone()).collect();
                if rank(&rows) != target - 2 {
                    continue;
                }
                let v: Vec<BigInt> =
                    p.v.iter()
                        .zip(&q.v)
                        .map(|(pv, qv)| &vals[i] * qv - &vals[j] * pv)
                        .collect();
                let mut tight = common;
                tight.push(k);
                next.push(DdRay {
                    v: primitive_raw(&v),
                    tight,
                });
            }
        }
        rays = next;
    }

    let target = n - lin.len();
    let mut out: Vec<Vec<BigInt>> = rays
        .into_iter()
        .filter(|r| {
            let rows: Vec<Vec<BigInt>> = r.tight.iter().map(|&t| constraints[t].clone()).collect();
            rank(&rows) + 1 == target
        })
        .map(|r| r.v)
        .collect();
    out.sort();
    out.dedup();
    (lin, out)
}
