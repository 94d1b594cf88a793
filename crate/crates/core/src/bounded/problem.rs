use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::poly::LaurentPoly;
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::fan::Fan2D;
use crate::hilbert::{hilbert_basis, SemigroupBasis};
use crate::linalg::{primitive, LatticeVector, Side};

/// {ξ ∈ (R₊*)ⁿ : ξ^{γ_i} < c_i for all i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialSet {
    rank: usize,
    gammas: Vec<LatticeVector>,
    constants: Vec<BigRational>,
}

impl BinomialSet {
    pub fn new(gammas: Vec<LatticeVector>, constants: Vec<BigRational>) -> Result<Self> {
        let Some(first) = gammas.first() else {
            return Err(Error::EmptyInput("a binomial set needs at least one inequality".into()));
        };
        let rank = first.rank();
        if gammas.len() != constants.len() {
            return Err(Error::Malformed(format!(
                "{} exponents but {} constants",
                gammas.len(),
                constants.len()
            )));
        }
        for g in &gammas {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
            if g.side() != Side::M {
                return Err(Error::SideMismatch("binomial exponents live in M".into()));
            }
        }
        if let Some(c) = constants.iter().find(|c| !c.is_positive()) {
            return Err(Error::Malformed(format!(
                "binomial constants must be positive, got {c}"
            )));
        }
        Ok(BinomialSet {
            rank,
            gammas,
            constants,
        })
    }

    /// Normalizes inequalities a ξ^α < b ξ^β (a, b > 0) to ξ^{α−β} < b/a.
    pub fn from_binomials(ineqs: Vec<(BigRational, LatticeVector, BigRational, LatticeVector)>) -> Result<Self> {
        let mut gammas = Vec::with_capacity(ineqs.len());
        let mut constants = Vec::with_capacity(ineqs.len());
        for (a, alpha, b, beta) in ineqs {
            if !a.is_positive() || !b.is_positive() {
                return Err(Error::Malformed(
                    "binomial coefficients must be positive on the positive orthant".into(),
                ));
            }
            gammas.push(alpha.checked_sub(&beta)?);
            constants.push(b / a);
        }
        Self::new(gammas, constants)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gammas(&self) -> &[LatticeVector] {
        &self.gammas
    }

    pub fn constants(&self) -> &[BigRational] {
        &self.constants
    }

    /// Membership of a point of the positive orthant.
    pub fn contains(&self, xi: &[BigRational]) -> Result<bool> {
        if xi.iter().any(|x| !x.is_positive()) {
            return Ok(false);
        }
        for (g, c) in self.gammas.iter().zip(&self.constants) {
            let v = LaurentPoly::monomial(g.clone(), BigRational::from_integer(1.into())).eval(xi)?;
            if v >= *c {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The v-tentacle {λ_v(s)ξ : ξ ∈ U, 0 < s ≤ 1} of a relatively compact open
/// set U in the positive orthant. Only v enters any computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tentacle {
    v: LatticeVector,
}

impl Tentacle {
    /// Stores the primitive vector in the direction of `v`.
    pub fn new(v: LatticeVector) -> Result<Self> {
        if v.side() != Side::N {
            return Err(Error::SideMismatch("the tentacle direction lives in N".into()));
        }
        Ok(Tentacle { v: primitive(&v)? })
    }

    pub fn v(&self) -> &LatticeVector {
        &self.v
    }

    pub fn rank(&self) -> usize {
        self.v.rank()
    }
}

/// {ξ ∈ (R*)² : f_i(ξ) > 0 for all i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSet {
    polys: Vec<LaurentPoly>,
}

impl BasicSet {
    pub fn new(polys: Vec<LaurentPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::EmptyInput("a basic set needs at least one inequality".into()));
        }
        for p in &polys {
            if p.rank() != 2 {
                return Err(Error::RankLimit {
                    rank: p.rank(),
                    limit: 2,
                });
            }
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        Ok(BasicSet { polys })
    }

    pub fn polys(&self) -> &[LaurentPoly] {
        &self.polys
    }

    pub fn contains(&self, xi: &[BigRational]) -> Result<bool> {
        for p in &self.polys {
            if !p.eval(xi)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetSpec {
    Binomial(BinomialSet),
    Tentacle(Tentacle),
    Basic(BasicSet),
}

impl SetSpec {
    pub fn rank(&self) -> usize {
        match self {
            SetSpec::Binomial(b) => b.rank(),
            SetSpec::Tentacle(t) => t.rank(),
            SetSpec::Basic(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetSpec::Binomial(_) => "binomial",
            SetSpec::Tentacle(_) => "tentacle",
            SetSpec::Basic(_) => "basic",
        }
    }
}

/// A semi-algebraic set together with the cone σ of the affine toric
/// variety U_σ it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub sigma: RationalCone,
    pub set: SetSpec,
}

impl ProblemSpec {
    pub fn new(sigma: RationalCone, set: SetSpec) -> Result<Self> {
        if sigma.side() != Side::N {
            return Err(Error::SideMismatch("σ lives in N".into()));
        }
        if sigma.rank() != set.rank() {
            return Err(Error::RankMismatch {
                expected: sigma.rank(),
                found: set.rank(),
            });
        }
        if !sigma.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(ProblemSpec { sigma, set })
    }
}

/// C_S = cone(γ₁, …, γ_r) in M_R.
pub fn cone_cs(s: &BinomialSet) -> Result<RationalCone> {
    RationalCone::from_generators(Side::M, s.rank, &s.gammas)
}

/// The cones K(S) and K₀(S) in N_R (equal for both set classes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSets {
    pub k: RationalCone,
    pub k0: RationalCone,
    pub equal: bool,
}

pub fn k_sets(set: &SetSpec) -> Result<KSets> {
    let k = match set {
        SetSpec::Binomial(b) => cone_cs(b)?.dual(),
        SetSpec::Tentacle(t) => RationalCone::ray(t.v()),
        SetSpec::Basic(_) => {
            return Err(Error::Malformed(
                "K(S) is only computed in closed form for binomial sets and tentacles".into(),
            ))
        }
    };
    Ok(KSets {
        k0: k.clone(),
        k,
        equal: true,
    })
}

fn check_sigma(sigma: &RationalCone, rank: usize) -> Result<()> {
    if sigma.side() != Side::N {
        return Err(Error::SideMismatch("σ lives in N".into()));
    }
    if sigma.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: sigma.rank(),
        });
    }
    if !sigma.is_pointed() {
        return Err(Error::NotPointed);
    }
    Ok(())
}

/// The cone in M_R whose lattice points index the bounded monomials:
/// σ* ∩ C_S for binomial sets, σ* ∩ (R₊v)* for tentacles.
pub fn bounded_cone(sigma: &RationalCone, set: &SetSpec) -> Result<RationalCone> {
    check_sigma(sigma, set.rank())?;
    let other = match set {
        SetSpec::Binomial(b) => cone_cs(b)?,
        SetSpec::Tentacle(t) => RationalCone::ray(t.v()).dual(),
        SetSpec::Basic(_) => {
            return Err(Error::Malformed(
                "basic sets go through the fan pipeline (adapted fan, (TC), F_S)".into(),
            ))
        }
    };
    sigma.dual().intersect(&other)
}

/// Hilbert basis of the semigroup H with B_{U_σ}(S) = R[H].
pub fn bounded_ring(sigma: &RationalCone, set: &SetSpec) -> Result<SemigroupBasis> {
    if set.rank() > crate::hilbert::MAX_HILBERT_RANK {
        return Err(Error::RankLimit {
            rank: set.rank(),
            limit: crate::hilbert::MAX_HILBERT_RANK,
        });
    }
    hilbert_basis(&bounded_cone(sigma, set)?)
}

/// Whether B_{U_σ}(S) = R, i.e. σ + K(S) = N_R.
pub fn is_trivial_bounded_ring(sigma: &RationalCone, set: &SetSpec) -> Result<bool> {
    check_sigma(sigma, set.rank())?;
    let k = k_sets(set)?.k;
    Ok(sigma.minkowski_sum(&k)?.is_full_space())
}

/// Primitive generators of the line ⟨δ, ·⟩ = 0 in N_R, for δ ∈ M of rank 2.
fn normal_line(delta: &LatticeVector) -> [LatticeVector; 2] {
    let d = delta.coords();
    let n = LatticeVector::from_raw(Side::N, vec![-d[1].clone(), d[0].clone()]);
    let p = primitive(&n).expect("nonzero difference");
    let q = -&p;
    [p, q]
}

/// Inner normals of the edges of the Newton polygon of `f` (rank 2).
pub(crate) fn newton_normals(f: &LaurentPoly) -> Vec<LatticeVector> {
    let pts = f.support();
    let mut out = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let delta = a - b;
            for u in normal_line(&delta) {
                // u is an inner normal of an edge iff the minimum of ⟨·, u⟩
                // over the support is attained at both a and b.
                let val = |p: &LatticeVector| -> BigInt { p.coords().iter().zip(u.coords()).map(|(x, y)| x * y).sum() };
                let m = pts.iter().map(&val).min().expect("nonempty support");
                if val(a) == m {
                    out.push(u);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Candidate rays whose presence makes a fan adapted to `set` (before
/// removing rays in the interior of σ).
pub(crate) fn adapted_rays(set: &SetSpec) -> Result<Vec<LatticeVector>> {
    let mut rays = Vec::new();
    match set {
        SetSpec::Binomial(_) | SetSpec::Tentacle(_) => {
            let k = k_sets(set)?.k;
            if let SetSpec::Tentacle(t) = set {
                rays.push(t.v().clone());
                rays.push(-t.v());
            } else if k.dim() <= 1 {
                rays.extend(k.generators());
            } else {
                rays.extend(
                    k.generators()
                        .into_iter()
                        .filter(|g| !k.relint_contains(g).expect("same lattice")),
                );
            }
        }
        SetSpec::Basic(b) => {
            for f in b.polys() {
                let pts = f.support();
                for (i, a) in pts.iter().enumerate() {
                    for c in &pts[i + 1..] {
                        rays.extend(normal_line(&(a - c)));
                    }
                }
            }
        }
    }
    Ok(rays)
}

/// Whether `v` lies in the interior of σ when σ is two-dimensional; such
/// rays would subdivide σ, which must stay a cone of the fan.
fn inside_sigma_interior(sigma: &RationalCone, v: &LatticeVector) -> bool {
    sigma.dim() == 2 && sigma.relint_contains(v).expect("same lattice")
}

/// A complete rank-2 fan adapted to the set and containing σ as a cone.
///
/// The rays are those of P², those of σ, and: for binomial sets the
/// boundary rays of K(S); for tentacles ±v; for basic sets the normals
/// ±(α−β)^⊥ of all exponent differences within each f_i. Rays in the
/// interior of a two-dimensional σ are left out.
pub fn adapted_fan(set: &SetSpec, sigma: &RationalCone) -> Result<Fan2D> {
    if set.rank() != 2 {
        return Err(Error::RankLimit {
            rank: set.rank(),
            limit: 2,
        });
    }
    check_sigma(sigma, 2)?;
    let mut rays: Vec<LatticeVector> = Fan2D::projective_plane().rays().to_vec();
    rays.extend(adapted_rays(set)?);
    rays.retain(|r| !inside_sigma_interior(sigma, r));
    rays.extend(sigma.rays());
    let fan = Fan2D::new(&rays)?;
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(fan)
}

/// The subfan F_S of an adapted fan and the Hilbert basis of M ∩ |F_S|*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfanFS {
    /// Rays of F_S in fan order, each flagged with whether it lies in σ.
    pub rays: Vec<(LatticeVector, bool)>,
    /// 2-cones of F_S as pairs of rays.
    pub two_cones: Vec<(LatticeVector, LatticeVector)>,
    pub support_dual: SemigroupBasis,
}

impl SubfanFS {
    /// Rays of F_S not contained in σ: the components of Y′.
    pub fn y_prime(&self) -> Vec<LatticeVector> {
        self.rays.iter().filter(|(_, s)| !s).map(|(r, _)| r.clone()).collect()
    }

    /// The cone |F_S|* in M_R.
    pub fn support_dual_cone(&self) -> RationalCone {
        let rays: Vec<Vec<BigInt>> = self.rays.iter().map(|(r, _)| r.coords().to_vec()).collect();
        RationalCone::from_raw_generators(Side::N, 2, &rays).dual()
    }
}

/// Checks that σ is a cone of the complete fan Σ.
pub(crate) fn check_fan_sigma(fan: &Fan2D, sigma: &RationalCone) -> Result<()> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    check_sigma(sigma, 2)?;
    if !fan.has_cone(sigma) {
        return Err(Error::NotAdapted(format!("σ = {sigma} is not a cone of the fan")));
    }
    Ok(())
}

/// Whether the relative interior of `rho` meets the cone `k`.
pub(crate) fn relint_meets(rho: &RationalCone, k: &RationalCone) -> bool {
    let i = rho.intersect(k).expect("same lattice");
    let gens = i.generators();
    if gens.is_empty() {
        return rho.is_zero();
    }
    let mut sum = LatticeVector::zero(Side::N, rho.rank());
    for g in &gens {
        sum = &sum + g;
    }
    rho.relint_contains(&sum).expect("same lattice")
}

/// Checks that every cone of Σ outside σ has its relative interior inside
/// K₀ or disjoint from it.
pub(crate) fn check_adapted_to_cone(fan: &Fan2D, sigma: &RationalCone, k0: &RationalCone) -> Result<()> {
    for (i, j) in fan.two_cones() {
        let rho = fan.two_cone(i, j);
        if sigma.contains_cone(&rho).expect("same lattice") {
            continue;
        }
        if relint_meets(&rho, k0) && !k0.contains_cone(&rho).expect("same lattice") {
            return Err(Error::NotAdapted(format!(
                "the relative interior of cone({}, {}) straddles the boundary of K₀(S)",
                fan.rays()[i],
                fan.rays()[j]
            )));
        }
    }
    Ok(())
}

/// F_S for a ray predicate "K₀(S) meets relint(τ)".
pub(crate) fn subfan_with(
    fan: &Fan2D,
    sigma: &RationalCone,
    mut in_k0: impl FnMut(&LatticeVector) -> Result<bool>,
) -> Result<SubfanFS> {
    check_fan_sigma(fan, sigma)?;
    let mut keep = vec![false; fan.len()];
    let mut in_sigma = vec![false; fan.len()];
    for (i, r) in fan.rays().iter().enumerate() {
        in_sigma[i] = sigma.contains(r)?;
        keep[i] = in_sigma[i] || in_k0(r)?;
    }
    let rays: Vec<(LatticeVector, bool)> = fan
        .rays()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(i, r)| (r.clone(), in_sigma[i]))
        .collect();
    let two_cones = fan
        .two_cones()
        .into_iter()
        .filter(|&(i, j)| keep[i] && keep[j])
        .map(|(i, j)| (fan.rays()[i].clone(), fan.rays()[j].clone()))
        .collect();
    let raw: Vec<Vec<BigInt>> = rays.iter().map(|(r, _)| r.coords().to_vec()).collect();
    let support_dual = hilbert_basis(&RationalCone::from_raw_generators(Side::N, 2, &raw).dual())?;
    Ok(SubfanFS {
        rays,
        two_cones,
        support_dual,
    })
}

/// F_S for a K₀ given as a cone (binomial sets and tentacles).
pub fn subfan_fs(fan: &Fan2D, sigma: &RationalCone, k0: &RationalCone) -> Result<SubfanFS> {
    if k0.rank() != 2 || k0.side() != Side::N {
        return Err(Error::Malformed("K₀ must be a cone in N_R of rank 2".into()));
    }
    check_fan_sigma(fan, sigma)?;
    check_adapted_to_cone(fan, sigma, k0)?;
    subfan_with(fan, sigma, |r| k0.contains(r))
}
