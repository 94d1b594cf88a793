//! Affine semigroups of lattice points in cones: Hilbert bases, membership,
//! module generators of shifted polyhedra, and integer relations.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::{dot, express_in_basis, hnf, hnf_reduce, integer_kernel, LatticeSplit};
use crate::linalg::{LatticeVector, Side};

/// Largest ambient rank for Hilbert bases of non-simplicial cones.
pub const MAX_HILBERT_RANK: usize = 4;
/// Largest ambient rank for Dickson decompositions.
pub const MAX_DICKSON_RANK: usize = 3;

/// The minimal generating set of the semigroup of lattice points of a cone.
///
/// For a cone with lineality space L, `lineality_units` holds ± a lattice
/// basis of L (in Hermite normal form) and `generators` holds the
/// irreducible elements of the pointed quotient, each given by its
/// canonical representative modulo L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupBasis {
    ambient_rank: usize,
    side: Side,
    generators: Vec<LatticeVector>,
    lineality_units: Vec<LatticeVector>,
}

impl SemigroupBasis {
    /// A semigroup given directly by generators, with no lineality units.
    /// The list is sorted and deduplicated but not minimalized.
    pub fn from_generators(side: Side, rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        Self::with_units(side, rank, generators, Vec::new())
    }

    pub fn with_units(
        side: Side,
        rank: usize,
        mut generators: Vec<LatticeVector>,
        mut lineality_units: Vec<LatticeVector>,
    ) -> Result<Self> {
        for v in generators.iter().chain(&lineality_units) {
            if v.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: v.rank(),
                });
            }
            if v.side() != side {
                return Err(Error::SideMismatch(format!(
                    "semigroup lives in {side}, generator in {}",
                    v.side()
                )));
            }
        }
        generators.retain(|g| !g.is_zero());
        generators.sort();
        generators.dedup();
        lineality_units.sort();
        lineality_units.dedup();
        Ok(SemigroupBasis {
            ambient_rank: rank,
            side,
            generators,
            lineality_units,
        })
    }

    /// The trivial semigroup {0}.
    pub fn trivial(side: Side, rank: usize) -> Self {
        SemigroupBasis {
            ambient_rank: rank,
            side,
            generators: Vec::new(),
            lineality_units: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn lineality_units(&self) -> &[LatticeVector] {
        &self.lineality_units
    }

    /// Generators followed by units: everything needed to generate the
    /// semigroup as a monoid.
    pub fn all_generators(&self) -> Vec<LatticeVector> {
        let mut v = self.generators.clone();
        v.extend(self.lineality_units.iter().cloned());
        v
    }

    /// The real cone spanned by the semigroup.
    pub fn cone(&self) -> RationalCone {
        let raw: Vec<Vec<BigInt>> = self.all_generators().iter().map(|g| g.coords().to_vec()).collect();
        RationalCone::from_raw_generators(self.side, self.ambient_rank, &raw)
    }

    fn split(&self) -> LatticeSplit {
        let lin: Vec<Vec<BigInt>> = self.lineality_units.iter().map(|u| u.coords().to_vec()).collect();
        LatticeSplit::from_subspace(&lin, self.ambient_rank)
    }
}

/// Hilbert basis of the semigroup of lattice points in `c`.
pub fn hilbert_basis(c: &RationalCone) -> Result<SemigroupBasis> {
    let n = c.rank();
    let split = LatticeSplit::from_subspace(c.raw_lineality(), n);
    let lin_basis = split.sublattice_basis();
    let mut units: Vec<LatticeVector> = Vec::new();
    for b in &lin_basis {
        units.push(LatticeVector::from_raw(c.side(), b.clone()));
        units.push(LatticeVector::from_raw(c.side(), b.iter().map(|x| -x).collect()));
    }
    units.sort();

    let q = split.quot_dim();
    let quot_rays: Vec<Vec<BigInt>> = c.raw_rays().iter().map(|r| split.to_quotient(r)).collect();
    let mut generators: Vec<LatticeVector> = Vec::new();
    if q > 0 && !quot_rays.is_empty() {
        let pointed = RationalCone::from_raw_generators(c.side(), q, &quot_rays);
        let d = pointed.dim();
        if n > MAX_HILBERT_RANK && pointed.raw_rays().len() != d {
            return Err(Error::RankLimit {
                rank: n,
                limit: MAX_HILBERT_RANK,
            });
        }
        // Coordinates on the saturated lattice spanned by the cone.
        let span_basis: Vec<Vec<BigInt>> = integer_kernel(pointed.raw_equations(), q);
        let local: Vec<Vec<BigInt>> = pointed
            .raw_rays()
            .iter()
            .map(|r| to_integer(&express_in_basis(&span_basis, r).expect("ray lies in its own span")))
            .collect();
        let basis = pointed_hilbert_basis(d, &local);
        for z in basis {
            let y: Vec<BigInt> = (0..q)
                .map(|i| span_basis.iter().zip(&z).map(|(b, zi)| &b[i] * zi).sum())
                .collect();
            let x = hnf_reduce(&split.lift(&y), &lin_basis);
            generators.push(LatticeVector::from_raw(c.side(), x));
        }
    }
    generators.sort();
    Ok(SemigroupBasis {
        ambient_rank: n,
        side: c.side(),
        generators,
        lineality_units: units,
    })
}

fn to_integer(v: &[BigRational]) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer(), "expected an integral coordinate");
            x.to_integer()
        })
        .collect()
}

/// Hilbert basis of the full-dimensional pointed cone in Z^d spanned by
/// `rays` (its extreme rays).
fn pointed_hilbert_basis(d: usize, rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cone = RationalCone::from_raw_generators(Side::N, d, rays);
    let mut candidates: BTreeSet<Vec<BigInt>> = rays.iter().cloned().collect();
    for simplex in triangulate(d, rays) {
        let gens: Vec<Vec<BigInt>> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(d, &gens));
    }
    let cands: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    cands
        .iter()
        .filter(|x| {
            !cands.iter().any(|y| {
                y != *x && {
                    let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    cone.contains_raw(&diff)
                }
            })
        })
        .cloned()
        .collect()
}

/// A triangulation of the cone spanned by `rays` (all extreme) using no new
/// rays. Each simplex is a list of indices into `rays`.
fn triangulate(d: usize, rays: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..rays.len()).collect();
    let mut out = Vec::new();
    triangulate_rec(d, rays, &idx, &mut out);
    out
}

fn triangulate_rec(d: usize, rays: &[Vec<BigInt>], idx: &[usize], out: &mut Vec<Vec<usize>>) {
    let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| rays[i].clone()).collect();
    let cone = RationalCone::from_raw_generators(Side::N, d, &sub);
    if idx.len() == cone.dim() {
        out.push(idx.to_vec());
        return;
    }
    let apex = idx[0];
    for f in cone.raw_facets() {
        if !dot(f, &rays[apex]).is_positive() {
            continue;
        }
        let face: Vec<usize> = idx.iter().copied().filter(|&i| dot(f, &rays[i]).is_zero()).collect();
        let mut parts = Vec::new();
        triangulate_rec(d, rays, &face, &mut parts);
        for mut p in parts {
            p.insert(0, apex);
            out.push(p);
        }
    }
}

/// Nonzero lattice points of the half-open parallelepiped
/// {Σ λ_i g_i : 0 ≤ λ_i < 1} for d linearly independent vectors in Z^d.
fn parallelepiped_points(d: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let h = hnf(gens, d);
    debug_assert_eq!(h.len(), d);
    let diag: Vec<BigInt> = (0..d).map(|i| h[i][i].clone()).collect();
    let mut out = Vec::new();
    let mut x: Vec<BigInt> = vec![BigInt::zero(); d];
    loop {
        let lam = express_in_basis(gens, &x).expect("simplex spans the lattice");
        let mut p = x.clone();
        for (l, g) in lam.iter().zip(gens) {
            let f = l.floor().to_integer();
            if !f.is_zero() {
                for (pi, gi) in p.iter_mut().zip(g) {
                    *pi -= &f * gi;
                }
            }
        }
        if p.iter().any(|c| !c.is_zero()) {
            out.push(p);
        }
        // odometer over the box of coset representatives
        let mut k = 0;
        loop {
            if k == d {
                return out;
            }
            x[k] += 1;
            if x[k] < diag[k] {
                break;
            }
            x[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// Whether `beta` is a nonnegative integer combination of the generators
/// (units may be used with either sign).
pub fn semigroup_contains(basis: &SemigroupBasis, beta: &LatticeVector) -> Result<bool> {
    if beta.rank() != basis.ambient_rank {
        return Err(Error::RankMismatch {
            expected: basis.ambient_rank,
            found: beta.rank(),
        });
    }
    if beta.side() != basis.side {
        return Err(Error::SideMismatch(format!(
            "semigroup lives in {}, vector in {}",
            basis.side,
            beta.side()
        )));
    }
    let checker = MembershipOracle::new(basis);
    Ok(checker.contains(beta.coords()))
}

/// Memoized membership test for a fixed semigroup.
pub(crate) struct MembershipOracle {
    split: LatticeSplit,
    gens: Vec<Vec<BigInt>>,
    cone: Option<RationalCone>,
    grading: Vec<BigInt>,
}

impl MembershipOracle {
    pub(crate) fn new(basis: &SemigroupBasis) -> Self {
        let split = basis.split();
        let q = split.quot_dim();
        let gens: Vec<Vec<BigInt>> = basis
            .generators
            .iter()
            .map(|g| split.to_quotient(g.coords()))
            .filter(|g| g.iter().any(|c| !c.is_zero()))
            .collect();
        let (cone, grading) = if q == 0 || gens.is_empty() {
            (None, vec![BigInt::zero(); q])
        } else {
            let cone = RationalCone::from_raw_generators(basis.side, q, &gens);
            let mut g = vec![BigInt::zero(); q];
            for f in cone.raw_facets() {
                for (gi, fi) in g.iter_mut().zip(f) {
                    *gi += fi;
                }
            }
            (Some(cone), g)
        };
        MembershipOracle {
            split,
            gens,
            cone,
            grading,
        }
    }

    pub(crate) fn contains(&self, beta: &[BigInt]) -> bool {
        let y = self.split.to_quotient(beta);
        if y.iter().all(Zero::is_zero) {
            return true;
        }
        let Some(cone) = &self.cone else {
            return false;
        };
        let mut memo: HashMap<Vec<BigInt>, bool> = HashMap::new();
        self.reach(cone, &y, &mut memo)
    }

    fn reach(&self, cone: &RationalCone, y: &[BigInt], memo: &mut HashMap<Vec<BigInt>, bool>) -> bool {
        if y.iter().all(Zero::is_zero) {
            return true;
        }
        if !cone.contains_raw(y) || !dot(&self.grading, y).is_positive() {
            return false;
        }
        if let Some(&r) = memo.get(y) {
            return r;
        }
        let mut found = false;
        for g in &self.gens {
            let rest: Vec<BigInt> = y.iter().zip(g).map(|(a, b)| a - b).collect();
            if self.reach(cone, &rest, memo) {
                found = true;
                break;
            }
        }
        memo.insert(y.to_vec(), found);
        found
    }

    pub(crate) fn grading_in_quotient(&self, beta: &[BigInt]) -> BigInt {
        dot(&self.grading, &self.split.to_quotient(beta))
    }
}

/// A polyhedron {β ∈ M_R : ⟨β, u_j⟩ ≥ −m_j for all j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPolyhedron {
    rank: usize,
    side: Side,
    constraints: Vec<(LatticeVector, BigInt)>,
}

impl ShiftedPolyhedron {
    /// `constraints` holds pairs (u_j, m_j) with u_j in the dual lattice.
    pub fn new(side: Side, rank: usize, constraints: Vec<(LatticeVector, BigInt)>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::EmptyInput("polyhedron of rank 0".into()));
        }
        for (u, _) in &constraints {
            if u.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: u.rank(),
                });
            }
            if u.side() != side.dual() {
                return Err(Error::SideMismatch(format!(
                    "constraint normals must live in {}",
                    side.dual()
                )));
            }
        }
        Ok(ShiftedPolyhedron {
            rank,
            side,
            constraints,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn constraints(&self) -> &[(LatticeVector, BigInt)] {
        &self.constraints
    }

    pub fn contains(&self, beta: &LatticeVector) -> Result<bool> {
        if beta.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: beta.rank(),
            });
        }
        Ok(self.contains_raw(beta.coords()))
    }

    pub(crate) fn contains_raw(&self, beta: &[BigInt]) -> bool {
        self.constraints
            .iter()
            .all(|(u, m)| dot(beta, u.coords()) >= -m.clone())
    }

    pub fn recession_cone(&self) -> RationalCone {
        let raw: Vec<Vec<BigInt>> = self.constraints.iter().map(|(u, _)| u.coords().to_vec()).collect();
        RationalCone::from_raw_inequalities(self.side, self.rank, &raw)
    }

    /// Whether the polyhedron is bounded (its recession cone is {0}).
    pub fn is_bounded(&self) -> bool {
        self.recession_cone().is_zero()
    }

    /// Vertices of the image of the polyhedron in the quotient by `split`
    /// (which must contain the lineality space), or `None` if it is empty.
    fn quotient_vertices(&self, split: &LatticeSplit) -> Option<Vec<Vec<BigRational>>> {
        let q = split.quot_dim();
        // Homogenize: (y, t) with ⟨y, u'⟩ + m t ≥ 0 and t ≥ 0.
        let mut ineqs: Vec<Vec<BigInt>> = self
            .constraints
            .iter()
            .map(|(u, m)| {
                let mut row = split.dual_to_quotient(u.coords());
                row.push(m.clone());
                row
            })
            .collect();
        let mut t = vec![BigInt::zero(); q + 1];
        t[q] = BigInt::from(1);
        ineqs.push(t);
        let hom = RationalCone::from_raw_inequalities(self.side, q + 1, &ineqs);
        let mut verts: Vec<Vec<BigRational>> = Vec::new();
        for g in hom.raw_rays() {
            if g[q].is_positive() {
                let t = BigRational::from_integer(g[q].clone());
                verts.push(
                    g[..q]
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()) / &t)
                        .collect(),
                );
            }
        }
        if verts.is_empty() {
            return None;
        }
        Some(verts)
    }
}

/// A finite set B₀ with (lattice points of P) = B₀ + semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerators {
    pub base_semigroup: SemigroupBasis,
    pub generators: Vec<LatticeVector>,
}

/// Minimal module generators of the lattice points of `p` over the
/// semigroup `a`, whose cone must be the recession cone of `p`.
pub fn dickson_decompose(p: &ShiftedPolyhedron, a: &SemigroupBasis) -> Result<ModuleGenerators> {
    let n = p.rank;
    if n > MAX_DICKSON_RANK {
        return Err(Error::RankLimit {
            rank: n,
            limit: MAX_DICKSON_RANK,
        });
    }
    if a.ambient_rank != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: a.ambient_rank,
        });
    }
    if a.side != p.side {
        return Err(Error::SideMismatch(
            "semigroup and polyhedron live in different lattices".into(),
        ));
    }
    let rec = p.recession_cone();
    if a.cone() != rec {
        return Err(Error::RecessionMismatch(format!(
            "the semigroup spans {} but the recession cone is {}",
            a.cone(),
            rec
        )));
    }
    let split = LatticeSplit::from_subspace(rec.raw_lineality(), n);
    let lin_basis = split.sublattice_basis();
    let empty = ModuleGenerators {
        base_semigroup: a.clone(),
        generators: Vec::new(),
    };
    let Some(verts) = p.quotient_vertices(&split) else {
        return Ok(empty);
    };
    let q = split.quot_dim();
    let quot_gens: Vec<Vec<BigInt>> = a.generators.iter().map(|g| split.to_quotient(g.coords())).collect();
    let mut lo: Vec<BigInt> = Vec::with_capacity(q);
    let mut hi: Vec<BigInt> = Vec::with_capacity(q);
    for i in 0..q {
        let vmin = verts.iter().map(|v| v[i].clone()).min().expect("nonempty");
        let vmax = verts.iter().map(|v| v[i].clone()).max().expect("nonempty");
        let neg: BigInt = quot_gens.iter().map(|g| g[i].clone().min(BigInt::zero())).sum();
        let pos: BigInt = quot_gens.iter().map(|g| g[i].clone().max(BigInt::zero())).sum();
        lo.push(vmin.floor().to_integer() + neg);
        hi.push(vmax.ceil().to_integer() + pos);
    }

    let oracle = MembershipOracle::new(a);
    let mut points: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    for y in box_points(&lo, &hi) {
        let x = hnf_reduce(&split.lift(&y), &lin_basis);
        if p.contains_raw(&x) {
            points.push((oracle.grading_in_quotient(&x), x));
        }
    }
    points.sort();
    let mut kept: Vec<Vec<BigInt>> = Vec::new();
    for (_, x) in points {
        let covered = kept.iter().any(|m| {
            let diff: Vec<BigInt> = x.iter().zip(m).map(|(a, b)| a - b).collect();
            oracle.contains(&diff)
        });
        if !covered {
            kept.push(x);
        }
    }
    let mut generators: Vec<LatticeVector> = kept.into_iter().map(|x| LatticeVector::from_raw(p.side, x)).collect();
    generators.sort();
    Ok(ModuleGenerators {
        base_semigroup: a.clone(),
        generators,
    })
}

/// All integer points of the box [lo, hi] (inclusive), lexicographic.
pub(crate) fn box_points(lo: &[BigInt], hi: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut x = lo.to_vec();
    loop {
        out.push(x.clone());
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k].clone();
        }
    }
}

/// An integer relation Σ c_i g_i = 0 among generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub coeffs: Vec<BigInt>,
}

impl Relation {
    /// max(c_i, 0) for each i.
    pub fn positive_part(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.clone().max(BigInt::zero())).collect()
    }

    /// max(−c_i, 0) for each i.
    pub fn negative_part(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| (-c).max(BigInt::zero())).collect()
    }
}

/// A lattice basis (in Hermite normal form) of the integer relations among
/// `gens`.
pub fn lattice_kernel_relations(gens: &[LatticeVector]) -> Result<Vec<Relation>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.rank();
    for g in gens {
        if g.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: g.rank(),
            });
        }
        if g.side() != first.side() {
            return Err(Error::SideMismatch("generators live in different lattices".into()));
        }
    }
    let r = gens.len();
    let e: Vec<Vec<BigInt>> = (0..n)
        .map(|i| gens.iter().map(|g| g.coords()[i].clone()).collect())
        .collect();
    Ok(integer_kernel(&e, r)
        .into_iter()
        .map(|coeffs| Relation { coeffs })
        .collect())
}
