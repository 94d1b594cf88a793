use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{pow_rat, LaurentPoly};
use super::problem::{
    check_adapted_to_cone, check_fan_sigma, k_sets, newton_normals, subfan_with, BasicSet, ProblemSpec, SetSpec,
    SubfanFS,
};
use super::univariate::{cell_samples, UPoly};
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::fan::Fan2D;
use crate::linalg::{pairing, primitive, LatticeVector, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TcStatus {
    Verified,
    Violated,
    Unknown,
}

impl fmt::Display for TcStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TcStatus::Verified => "Verified",
            TcStatus::Violated => "Violated",
            TcStatus::Unknown => "Unknown",
        })
    }
}

/// Outcome of checking the toric compatibility condition. A `Violated`
/// report always names the offending ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcReport {
    pub status: TcStatus,
    pub witness_ray: Option<LatticeVector>,
    pub reason: String,
}

impl TcReport {
    fn verified(reason: impl Into<String>) -> Self {
        TcReport {
            status: TcStatus::Verified,
            witness_ray: None,
            reason: reason.into(),
        }
    }
}

/// Three-valued answer of the grid certifier: it never claims non-membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K0Certificate {
    /// A point ξ with in_v(f_i)(ξ) > 0 for all i.
    In {
        witness: Vec<BigRational>,
    },
    Inconclusive,
}

/// The default sample values {−2, −1, −1/2, 1/2, 1, 2}.
pub fn default_grid() -> Vec<BigRational> {
    [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect()
}

fn normalized_grid(grid: &[BigRational]) -> Vec<BigRational> {
    let mut g: Vec<BigRational> = grid.iter().filter(|x| !x.is_zero()).cloned().collect();
    g.sort();
    g.dedup();
    g
}

fn check_v(v: &LatticeVector) -> Result<()> {
    if v.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: v.rank(),
        });
    }
    if v.side() != Side::N {
        return Err(Error::SideMismatch("directions live in N".into()));
    }
    Ok(())
}

fn initial_forms(s: &BasicSet, v: &LatticeVector) -> Result<Vec<LaurentPoly>> {
    s.polys().iter().map(|f| f.initial_form(v)).collect()
}

fn all_positive(polys: &[LaurentPoly], xi: &[BigRational]) -> Result<bool> {
    for p in polys {
        if !p.eval(xi)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches the grid (points with both coordinates in `grid`, zero values
/// skipped) in lexicographic order for ξ with in_v(f_i)(ξ) > 0 for all i.
pub fn certify_k0_membership(s: &BasicSet, v: &LatticeVector, grid: &[BigRational]) -> Result<K0Certificate> {
    check_v(v)?;
    let forms = initial_forms(s, v)?;
    let g = normalized_grid(grid);
    for x in &g {
        for y in &g {
            let xi = vec![x.clone(), y.clone()];
            if all_positive(&forms, &xi)? {
                return Ok(K0Certificate::In { witness: xi });
            }
        }
    }
    Ok(K0Certificate::Inconclusive)
}

/// Exact decision of v ∈ K₀(S) for v ≠ 0: returns a point ξ with
/// in_v(f_i)(ξ) > 0 for all i, or `None` if no such point exists.
///
/// With p = primitive(v), a ∈ M with ⟨a, p⟩ = 1 and w = (−p₂, p₁), the
/// coordinates U = ξ^a, V = ξ^w identify the torus with itself and turn
/// each initial form into U^{d_i} g_i(V). The sign of U only matters, and
/// the signs of the g_i are constant between consecutive real roots, so
/// one sample per root-free interval decides the question.
pub fn decide_k0(s: &BasicSet, v: &LatticeVector) -> Result<Option<Vec<BigRational>>> {
    check_v(v)?;
    let p = primitive(v)?;
    let (p1, p2) = (&p.coords()[0], &p.coords()[1]);
    let eg = p1.extended_gcd(p2);
    let sign = if eg.gcd.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let a = [&eg.x * &sign, &eg.y * &sign];
    let w = [-p2.clone(), p1.clone()];
    let forms = initial_forms(s, &p)?;
    // Each form as (d_i, min t, polynomial part in V).
    let mut parts = Vec::with_capacity(forms.len());
    let mut h = UPoly::x();
    for f in &forms {
        let mut d = None;
        let mut by_t: Vec<(BigInt, BigRational)> = Vec::new();
        for (alpha, c) in f.terms() {
            d = Some(pairing(alpha, &p)?);
            let t = &a[0] * &alpha.coords()[1] - &a[1] * &alpha.coords()[0];
            by_t.push((t, c.clone()));
        }
        let min_t = by_t.iter().map(|(t, _)| t.clone()).min().expect("nonzero form");
        let len = by_t
            .iter()
            .map(|(t, _)| (t - &min_t).to_usize().expect("degree fits in usize"))
            .max()
            .expect("nonzero form")
            + 1;
        let mut coeffs = vec![BigRational::zero(); len];
        for (t, c) in by_t {
            coeffs[(t - &min_t).to_usize().expect("degree fits in usize")] += c;
        }
        let poly = UPoly::new(coeffs);
        h = h.mul(&poly);
        parts.push((d.expect("nonzero form"), min_t, poly));
    }
    for u in cell_samples(&h) {
        if u.is_zero() {
            continue;
        }
        for sgn in [BigInt::one(), -BigInt::one()] {
            let ok = parts.iter().all(|(d, min_t, poly)| {
                let val = poly.eval(&u) * pow_rat(&u, min_t).expect("u is nonzero");
                let flip = sgn.is_negative() && d.is_odd();
                if flip {
                    val.is_negative()
                } else {
                    val.is_positive()
                }
            });
            if ok {
                let big_u = BigRational::from_integer(sgn);
                let xi = vec![
                    pow_rat(&big_u, &w[1]).expect("nonzero") * pow_rat(&u, &-&a[1]).expect("nonzero"),
                    pow_rat(&big_u, &-&w[0]).expect("nonzero") * pow_rat(&u, &a[0]).expect("nonzero"),
                ];
                debug_assert!(all_positive(&forms, &xi).unwrap_or(false));
                return Ok(Some(xi));
            }
        }
    }
    Ok(None)
}

/// A curve s ↦ (s^{v₁}(η₀₁ + s η₁₁), s^{v₂}(η₀₂ + s η₁₂)) that lies in S for
/// all small s > 0 and converges to a point of the orbit O_τ, τ = R₊v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub eta0: Vec<BigRational>,
    pub eta1: Vec<BigRational>,
}

/// Whether f along the curve is positive for all small s > 0.
fn positive_along(f: &LaurentPoly, v: &LatticeVector, eta0: &[BigRational], eta1: &[BigRational]) -> Result<bool> {
    let q: Vec<UPoly> = (0..2)
        .map(|j| UPoly::new(vec![eta0[j].clone(), eta1[j].clone()]))
        .collect();
    let n: Vec<BigInt> = (0..2)
        .map(|j| {
            f.terms()
                .map(|(e, _)| -e.coords()[j].clone())
                .max()
                .unwrap_or_else(BigInt::zero)
                .max(BigInt::zero())
        })
        .collect();
    let degs: Vec<BigInt> = f.terms().map(|(e, _)| pairing(e, v)).collect::<Result<_>>()?;
    let min_deg = degs.iter().min().cloned().unwrap_or_else(BigInt::zero);
    let mut total = UPoly::zero();
    for ((e, c), d) in f.terms().zip(&degs) {
        let shift = (d - &min_deg).to_usize().expect("degree fits in usize");
        let mut coeffs = vec![BigRational::zero(); shift];
        coeffs.push(c.clone());
        let mut term = UPoly::new(coeffs);
        for j in 0..2 {
            let k = (&e.coords()[j] + &n[j] * 2u32)
                .to_usize()
                .expect("exponent fits in usize");
            for _ in 0..k {
                term = term.mul(&q[j]);
            }
        }
        total = add(&total, &term);
    }
    Ok(total
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive()))
}

fn add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &UPoly, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(BigRational::zero);
    UPoly::new((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

/// Searches for a curve certifying that the closure of S meets O_τ for
/// τ = R₊v: first constant curves (η₁ = 0, i.e. grid points of S(v)), then
/// first-order curves, all in lexicographic grid order.
pub fn certify_closure_meets(s: &BasicSet, v: &LatticeVector, grid: &[BigRational]) -> Result<Option<ClosureWitness>> {
    check_v(v)?;
    let g = normalized_grid(grid);
    let mut g1 = g.clone();
    g1.push(BigRational::zero());
    g1.sort();
    let zero = vec![BigRational::zero(); 2];
    let mut eta1s = vec![zero.clone()];
    for x in &g1 {
        for y in &g1 {
            let e = vec![x.clone(), y.clone()];
            if e != zero {
                eta1s.push(e);
            }
        }
    }
    for eta1 in &eta1s {
        for x in &g {
            for y in &g {
                let eta0 = vec![x.clone(), y.clone()];
                let mut ok = true;
                for f in s.polys() {
                    if !positive_along(f, v, &eta0, eta1)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(ClosureWitness {
                        eta0,
                        eta1: eta1.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Checks that every inner normal of every Newton-polygon edge of the f_i
/// is a ray of Σ, unless it lies in the interior of σ.
fn check_adapted_basic(fan: &Fan2D, sigma: &RationalCone, s: &BasicSet) -> Result<()> {
    for f in s.polys() {
        for u in newton_normals(f) {
            if fan.ray_index(&u).is_some() {
                continue;
            }
            if sigma.dim() == 2 && sigma.relint_contains(&u)? {
                continue;
            }
            return Err(Error::NotAdapted(format!(
                "the initial forms of {f} change across {u}, which is not a ray of the fan"
            )));
        }
    }
    Ok(())
}

/// Checks the toric compatibility condition for the completion X_Σ of U_σ.
///
/// Binomial sets and tentacles satisfy it on every adapted fan. For basic
/// sets each ray τ ⊄ σ is examined in fan order: τ is fine if it meets
/// K₀(S) (grid certificate, then exact decision); otherwise a curve in S
/// tending to O_τ shows a violation, and failing that the ray is unknown.
pub fn check_tc(fan: &Fan2D, spec: &ProblemSpec, grid: &[BigRational]) -> Result<TcReport> {
    let sigma = &spec.sigma;
    if spec.set.rank() != 2 {
        return Err(Error::RankLimit {
            rank: spec.set.rank(),
            limit: 2,
        });
    }
    check_fan_sigma(fan, sigma)?;
    let s = match &spec.set {
        SetSpec::Binomial(_) | SetSpec::Tentacle(_) => {
            let k = k_sets(&spec.set)?;
            check_adapted_to_cone(fan, sigma, &k.k0)?;
            return Ok(TcReport::verified(format!(
                "{} set on an adapted fan: every boundary divisor meeting the closure meets K₀(S)",
                spec.set.kind()
            )));
        }
        SetSpec::Basic(s) => s,
    };
    check_adapted_basic(fan, sigma, s)?;
    let mut unknown: Vec<LatticeVector> = Vec::new();
    for r in fan.rays() {
        if sigma.contains(r)? {
            continue;
        }
        if let K0Certificate::In { .. } = certify_k0_membership(s, r, grid)? {
            continue;
        }
        if decide_k0(s, r)?.is_some() {
            continue;
        }
        if let Some(w) = certify_closure_meets(s, r, grid)? {
            return Ok(TcReport {
                status: TcStatus::Violated,
                witness_ray: Some(r.clone()),
                reason: format!(
                    "K₀(S) misses the ray {r}, but the curve s^v(η₀ + sη₁) with η₀ = {}, η₁ = {} stays in S and tends to its orbit",
                    fmt_point(&w.eta0),
                    fmt_point(&w.eta1)
                ),
            });
        }
        unknown.push(r.clone());
    }
    if unknown.is_empty() {
        Ok(TcReport::verified("every ray outside σ meets K₀(S)"))
    } else {
        let list: Vec<String> = unknown.iter().map(|r| r.to_string()).collect();
        Ok(TcReport {
            status: TcStatus::Unknown,
            witness_ray: None,
            reason: format!(
                "K₀(S) misses the rays {} and no curve certifies that the closure of S meets their divisors",
                list.join(", ")
            ),
        })
    }
}

fn fmt_point(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(crate::linalg::format_rational).collect();
    format!("({})", parts.join(", "))
}

/// F_S for a basic set, deciding K₀(S) on each ray exactly.
pub fn subfan_fs_basic(fan: &Fan2D, sigma: &RationalCone, s: &BasicSet) -> Result<SubfanFS> {
    check_fan_sigma(fan, sigma)?;
    check_adapted_basic(fan, sigma, s)?;
    subfan_with(fan, sigma, |r| Ok(decide_k0(s, r)?.is_some()))
}
