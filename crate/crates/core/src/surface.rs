//! Intersection theory of torus-invariant curves on smooth complete toric
//! surfaces and the transcendence degree of O(X ∖ ∪_{τ∈T} Y_τ).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::fan::{det, Fan2D};
use crate::linalg::{inertia, Inertia, LatticeVector, Side, SymmetricRationalMatrix};

/// A smooth complete toric surface with b_i v_i = v_{i−1} + v_{i+1}, so
/// that the invariant curve Y_i has self-intersection −b_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSurface {
    fan: Fan2D,
    b: Vec<BigInt>,
}

/// Computes the b_i of a smooth complete fan.
pub fn self_intersections(fan: &Fan2D) -> Result<ToricSurface> {
    if !fan.is_smooth()? {
        return Err(Error::NotSmooth);
    }
    let rays = fan.rays();
    let n = rays.len();
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        let s = &rays[(i + n - 1) % n] + &rays[(i + 1) % n];
        b.push(multiple_of(&s, &rays[i]));
    }
    Ok(ToricSurface { fan: fan.clone(), b })
}

/// The integer k with s = k·v for primitive v; smoothness guarantees it.
fn multiple_of(s: &LatticeVector, v: &LatticeVector) -> BigInt {
    let (sc, vc) = (s.coords(), v.coords());
    let k = if !vc[0].is_zero() {
        &sc[0] / &vc[0]
    } else {
        &sc[1] / &vc[1]
    };
    debug_assert!(sc.iter().zip(vc).all(|(x, y)| *x == &k * y));
    k
}

impl ToricSurface {
    pub fn new(fan: &Fan2D) -> Result<Self> {
        self_intersections(fan)
    }

    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Y_i² = −b_i.
    pub fn self_intersection(&self, i: usize) -> BigInt {
        -&self.b[i]
    }

    /// Y_i · Y_j for i ≠ j: 1 if the rays are cyclically adjacent, else 0.
    fn off_diagonal(&self, i: usize, j: usize) -> i64 {
        let n = self.len();
        i64::from((i + 1) % n == j || (j + 1) % n == i)
    }

    fn matrix_on(&self, idx: &[usize]) -> SymmetricRationalMatrix {
        let mut a = SymmetricRationalMatrix::zeros(idx.len());
        for (p, &i) in idx.iter().enumerate() {
            a.set(p, p, BigRational::from_integer(self.self_intersection(i)));
            for (q, &j) in idx.iter().enumerate().skip(p + 1) {
                a.set(p, q, BigRational::from_integer(self.off_diagonal(i, j).into()));
            }
        }
        a
    }

    /// The intersection matrix of all invariant curves.
    pub fn full_intersection_matrix(&self) -> SymmetricRationalMatrix {
        let idx: Vec<usize> = (0..self.len()).collect();
        self.matrix_on(&idx)
    }

    /// The vectors (⟨e_k*, v_i⟩)_i, which span the principal divisors.
    pub fn principal_relations(&self) -> Vec<Vec<BigInt>> {
        (0..2)
            .map(|k| self.fan.rays().iter().map(|r| r.coords()[k].clone()).collect())
            .collect()
    }
}

/// A set T of boundary curves, given by ray indices of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSelection {
    surface: ToricSurface,
    t: Vec<usize>,
}

impl DivisorSelection {
    pub fn new(surface: ToricSurface, mut t: Vec<usize>) -> Result<Self> {
        if let Some(&i) = t.iter().find(|&&i| i >= surface.len()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: surface.len(),
            });
        }
        t.sort_unstable();
        t.dedup();
        Ok(DivisorSelection { surface, t })
    }

    /// Selects the curves whose rays are listed (in any order).
    pub fn from_rays(surface: ToricSurface, rays: &[LatticeVector]) -> Result<Self> {
        let mut t = Vec::with_capacity(rays.len());
        for r in rays {
            let i = surface
                .fan()
                .ray_index(r)
                .ok_or_else(|| Error::Malformed(format!("{r} is not a ray of the fan")))?;
            t.push(i);
        }
        Self::new(surface, t)
    }

    pub fn surface(&self) -> &ToricSurface {
        &self.surface
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn t_prime(&self) -> Vec<usize> {
        (0..self.surface.len()).filter(|i| !self.t.contains(i)).collect()
    }
}

/// Y_i · Y_j for i, j ∈ T.
pub fn intersection_matrix(sel: &DivisorSelection) -> Result<SymmetricRationalMatrix> {
    if sel.t.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(sel.surface.matrix_on(&sel.t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainClass {
    SemidefiniteSingular,
    NegativeDefinite,
    Indefinite,
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainClass::SemidefiniteSingular => "semidefinite_singular",
            ChainClass::NegativeDefinite => "negative_definite",
            ChainClass::Indefinite => "indefinite",
        })
    }
}

/// Classifies the chain of curves Y_{ρ₁}, …, Y_{ρ_n} between the rays ρ₀
/// and ρ_{n+1}, given as ray indices that walk through consecutive cones
/// of the fan. The class is computed from the inertia of the intersection
/// matrix and from the position of ρ_{n+1} relative to the line R·ρ₀; the
/// two must agree.
pub fn chain_classify(surface: &ToricSurface, chain: &[usize]) -> Result<(ChainClass, Inertia)> {
    let n = surface.len();
    if chain.len() < 3 {
        return Err(Error::InvalidChain(
            "a chain needs ρ₀, at least one inner ray, and ρ_{n+1}".into(),
        ));
    }
    if let Some(&i) = chain.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let mut seen = chain.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != chain.len() {
        return Err(Error::InvalidChain("rays of a chain must be distinct".into()));
    }
    let step = if chain[1] == (chain[0] + 1) % n {
        1
    } else if (chain[1] + 1) % n == chain[0] {
        n - 1
    } else {
        return Err(Error::InvalidChain(format!(
            "rays {} and {} are not adjacent",
            chain[0], chain[1]
        )));
    };
    if chain.windows(2).any(|w| w[1] != (w[0] + step) % n) {
        return Err(Error::InvalidChain(
            "consecutive rays must bound cones of the fan in one direction".into(),
        ));
    }
    let inner = &chain[1..chain.len() - 1];
    let a = surface.matrix_on(inner);
    let sig = inertia(&a);
    let by_signature = if sig.n_plus > 0 {
        ChainClass::Indefinite
    } else if sig.n_zero > 0 {
        ChainClass::SemidefiniteSingular
    } else {
        ChainClass::NegativeDefinite
    };
    let rays = surface.fan().rays();
    let r0 = &rays[chain[0]];
    let r1 = &rays[chain[1]];
    let last = &rays[chain[chain.len() - 1]];
    let by_geometry = if *last == -r0 {
        ChainClass::SemidefiniteSingular
    } else if det(r0, r1).signum() == det(r0, last).signum() {
        ChainClass::NegativeDefinite
    } else {
        ChainClass::Indefinite
    };
    if by_signature != by_geometry {
        return Err(Error::Disagreement(format!(
            "chain {chain:?}: inertia {sig} gives {by_signature}, geometry gives {by_geometry}"
        )));
    }
    if by_signature == ChainClass::SemidefiniteSingular && sig.n_zero != 1 {
        return Err(Error::Disagreement(format!(
            "chain {chain:?}: a singular chain matrix must have corank 1, got {sig}"
        )));
    }
    Ok((by_signature, sig))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingShape {
    Constants,
    PolynomialOneVar,
    LaurentOneVar,
    TwoDimensional,
}

impl RingShape {
    pub fn as_str(self) -> &'static str {
        match self {
            RingShape::Constants => "constants",
            RingShape::PolynomialOneVar => "polynomial_one_var",
            RingShape::LaurentOneVar => "laurent_one_var",
            RingShape::TwoDimensional => "two_dimensional",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeometricCase {
    FullPlane,
    HalfPlane,
    Line,
    Salient,
}

impl GeometricCase {
    pub fn as_str(self) -> &'static str {
        match self {
            GeometricCase::FullPlane => "full_plane",
            GeometricCase::HalfPlane => "half_plane",
            GeometricCase::Line => "line",
            GeometricCase::Salient => "salient",
        }
    }

    pub fn trdeg(self) -> u8 {
        match self {
            GeometricCase::FullPlane => 0,
            GeometricCase::HalfPlane | GeometricCase::Line => 1,
            GeometricCase::Salient => 2,
        }
    }

    pub fn ring_shape(self) -> RingShape {
        match self {
            GeometricCase::FullPlane => RingShape::Constants,
            GeometricCase::HalfPlane => RingShape::PolynomialOneVar,
            GeometricCase::Line => RingShape::LaurentOneVar,
            GeometricCase::Salient => RingShape::TwoDimensional,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IitakaResult {
    pub trdeg: u8,
    pub ring_shape: RingShape,
    /// Inertia of the intersection matrix on T; absent for T = ∅.
    pub signature_route: Option<Inertia>,
    pub geometric_case: GeometricCase,
}

/// The shape of the cone C = cone(v_τ : τ ∈ T′), whose dual describes
/// O(X ∖ ∪_{τ∈T} Y_τ) = R[M ∩ C*].
pub fn geometric_case(sel: &DivisorSelection) -> GeometricCase {
    let rays = sel.surface.fan().rays();
    let gens: Vec<LatticeVector> = sel.t_prime().iter().map(|&i| rays[i].clone()).collect();
    let c = RationalCone::from_generators(Side::N, 2, &gens).expect("rank-2 rays");
    if c.is_full_space() {
        GeometricCase::FullPlane
    } else if c.lineality_dim() == 1 {
        if c.dim() == 2 {
            GeometricCase::HalfPlane
        } else {
            GeometricCase::Line
        }
    } else {
        GeometricCase::Salient
    }
}

/// Transcendence degree from the inertia of the intersection matrix on T:
/// negative definite gives 0, negative semidefinite and singular gives 1, a
/// positive eigenvalue gives 2.
pub fn signature_trdeg(sig: &Inertia) -> u8 {
    if sig.n_plus > 0 {
        2
    } else if sig.n_zero > 0 {
        1
    } else {
        0
    }
}

/// Classifies O(X ∖ ∪_{τ∈T} Y_τ) through the cone C and, for T ≠ ∅, through
/// the inertia of the intersection matrix; disagreement is an error.
pub fn iitaka_classify(sel: &DivisorSelection) -> Result<IitakaResult> {
    let case = geometric_case(sel);
    let signature_route = if sel.t.is_empty() {
        None
    } else {
        let sig = inertia(&intersection_matrix(sel)?);
        let k = signature_trdeg(&sig);
        if k != case.trdeg() {
            return Err(Error::Disagreement(format!(
                "T = {:?}: inertia {sig} gives transcendence degree {k}, the cone C is {} (degree {})",
                sel.t,
                case.as_str(),
                case.trdeg()
            )));
        }
        Some(sig)
    };
    Ok(IitakaResult {
        trdeg: case.trdeg(),
        ring_shape: case.ring_shape(),
        signature_route,
        geometric_case: case,
    })
}

/// The canonical integer vector m ≥ 1 with A·m < 0 entrywise for a negative
/// definite A: smallest max-norm first, then lexicographically smallest.
pub fn positive_combination(a: &SymmetricRationalMatrix) -> Result<Vec<BigInt>> {
    if !inertia(a).is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let n = a.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    const MAX_CANDIDATES: u64 = 50_000_000;
    let mut tried: u64 = 0;
    for k in 1u64.. {
        let mut m = vec![1u64; n];
        loop {
            if m.contains(&k) {
                tried += 1;
                let mv: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
                if a.mul_vec(&mv).iter().all(Signed::is_negative) {
                    return Ok(mv);
                }
                if tried >= MAX_CANDIDATES {
                    return Err(Error::SearchExhausted(format!(
                        "no positive combination with entries up to {k}"
                    )));
                }
            }
            // Lexicographic successor in {1..k}^n.
            let mut i = n;
            while i > 0 && m[i - 1] == k {
                m[i - 1] = 1;
                i -= 1;
            }
            if i == 0 {
                break;
            }
            m[i - 1] += 1;
        }
    }
    unreachable!("the search loop only exits by returning")
}

/// Number of rays inserted when resolving the cone(e₂, p e₁ − q e₂)-type
/// singularity: the length of the Hirzebruch–Jung continued fraction of
/// p/q for 0 < q < p, gcd(p, q) = 1.
pub fn hirzebruch_jung(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while b.is_positive() {
        let c = a.div_ceil(&b);
        out.push(c.clone());
        let r = &c * &b - &a;
        a = b;
        b = r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(r: &[[i64; 2]]) -> ToricSurface {
        self_intersections(&Fan2D::from_i64(r).unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn self_intersection_examples() {
        let p2 = surf(&[[1, 0], [0, 1], [-1, -1]]);
        assert_eq!(p2.b(), ints(&[-1, -1, -1]).as_slice());
        let ex1 = surf(&[[1, 0], [0, 1], [-1, -1], [0, -1]]);
        let i = ex1.fan().ray_index(&LatticeVector::n(&[0, -1])).unwrap();
        assert_eq!(ex1.self_intersection(i), BigInt::from(-1));
        let f2 = surf(&[[1, 0], [0, 1], [-1, 2], [0, -1]]);
        let i = f2.fan().ray_index(&LatticeVector::n(&[0, 1])).unwrap();
        assert_eq!(f2.self_intersection(i), BigInt::from(-2));
        let singular = Fan2D::from_i64(&[[1, 0], [-1, 2], [0, -1]]).unwrap();
        assert_eq!(self_intersections(&singular), Err(Error::NotSmooth));
        let partial = Fan2D::from_i64(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(self_intersections(&partial), Err(Error::NotComplete));
    }

    #[test]
    fn intersection_matrix_examples() {
        let p2 = surf(&[[1, 0], [0, 1], [-1, -1]]);
        let all = DivisorSelection::new(p2.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(
            intersection_matrix(&all).unwrap(),
            SymmetricRationalMatrix::from_i64_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap()
        );
        let ex1 = surf(&[[1, 0], [0, 1], [-1, -1], [0, -1]]);
        let sel = DivisorSelection::from_rays(ex1, &[LatticeVector::n(&[-1, -1])]).unwrap();
        assert_eq!(
            intersection_matrix(&sel).unwrap(),
            SymmetricRationalMatrix::from_i64_rows(&[vec![0]]).unwrap()
        );
        let empty = DivisorSelection::new(p2, vec![]).unwrap();
        assert_eq!(intersection_matrix(&empty), Err(Error::EmptySelection));
    }

    #[test]
    fn chains() {
        // Rays e₁, e₂, −e₁ + ... on the F₂-type fan: e₁ → e₂ → −e₁+2e₂.
        let f = surf(&[[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]]);
        let idx = |v: [i64; 2]| f.fan().ray_index(&LatticeVector::n(&v)).unwrap();
        let (c, _) = chain_classify(&f, &[idx([1, 0]), idx([1, 1]), idx([0, 1])]).unwrap();
        assert_eq!(c, ChainClass::NegativeDefinite);
        let (c, sig) = chain_classify(&f, &[idx([1, 0]), idx([1, 1]), idx([0, 1]), idx([-1, 0])]).unwrap();
        assert_eq!(c, ChainClass::SemidefiniteSingular);
        assert_eq!(sig.n_zero, 1);
        let (c, sig) =
            chain_classify(&f, &[idx([1, 0]), idx([1, 1]), idx([0, 1]), idx([-1, 0]), idx([0, -1])]).unwrap();
        assert_eq!(c, ChainClass::Indefinite);
        assert_eq!(sig.n_plus, 1);
        let back = chain_classify(&f, &[idx([0, 1]), idx([1, 1]), idx([1, 0])]).unwrap();
        assert_eq!(back.0, ChainClass::NegativeDefinite);
        assert!(matches!(chain_classify(&f, &[0, 2, 3]), Err(Error::InvalidChain(_))));
        assert!(matches!(chain_classify(&f, &[0, 1]), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn iitaka_examples() {
        let ex2 = Fan2D::projective_plane()
            .refine(&[LatticeVector::n(&[1, -2]), LatticeVector::n(&[-1, 2])])
            .unwrap()
            .smooth_resolution();
        let s = self_intersections(&ex2).unwrap();
        let outside: Vec<LatticeVector> = ex2
            .rays()
            .iter()
            .filter(|r| BigInt::from(2) * &r.coords()[0] + &r.coords()[1] < BigInt::zero())
            .cloned()
            .collect();
        let sel = DivisorSelection::from_rays(s.clone(), &outside).unwrap();
        let r = iitaka_classify(&sel).unwrap();
        assert_eq!((r.trdeg, r.geometric_case), (1, GeometricCase::HalfPlane));
        let sel = DivisorSelection::from_rays(s, &[LatticeVector::n(&[-1, -1])]).unwrap();
        let r = iitaka_classify(&sel);
        // (−1,−1) is removed alone; C is generated by all other rays of the
        // resolved fan and is the whole plane.
        assert_eq!(r.unwrap().trdeg, 0);

        let ex1 = surf(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        let sel = DivisorSelection::from_rays(ex1, &[LatticeVector::n(&[1, 0]), LatticeVector::n(&[-1, 0])]).unwrap();
        let r = iitaka_classify(&sel).unwrap();
        assert_eq!(r.geometric_case, GeometricCase::Line);
        assert_eq!(r.ring_shape, RingShape::LaurentOneVar);

        let p2 = surf(&[[1, 0], [0, 1], [-1, -1]]);
        let sel = DivisorSelection::from_rays(p2.clone(), &[LatticeVector::n(&[-1, -1])]).unwrap();
        let r = iitaka_classify(&sel).unwrap();
        assert_eq!((r.trdeg, r.geometric_case), (2, GeometricCase::Salient));
        let none = DivisorSelection::new(p2, vec![]).unwrap();
        let r = iitaka_classify(&none).unwrap();
        assert_eq!((r.trdeg, r.signature_route), (0, None));
    }

    #[test]
    fn half_plane_case() {
        let f = surf(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        let sel = DivisorSelection::from_rays(f, &[LatticeVector::n(&[0, -1])]).unwrap();
        let r = iitaka_classify(&sel).unwrap();
        assert_eq!((r.trdeg, r.ring_shape), (1, RingShape::PolynomialOneVar));
    }

    #[test]
    fn positive_combinations() {
        let m = |rows: &[Vec<i64>]| SymmetricRationalMatrix::from_i64_rows(rows).unwrap();
        assert_eq!(
            positive_combination(&m(&[vec![-1, 0], vec![0, -1]])).unwrap(),
            ints(&[1, 1])
        );
        assert_eq!(
            positive_combination(&m(&[vec![-2, 1], vec![1, -2]])).unwrap(),
            ints(&[1, 1])
        );
        assert_eq!(
            positive_combination(&m(&[vec![-1, 1], vec![1, -2]])).unwrap(),
            ints(&[3, 2])
        );
        assert_eq!(
            positive_combination(&m(&[vec![1, 0], vec![0, -1]])),
            Err(Error::NotNegativeDefinite)
        );
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hirzebruch_jung(&BigInt::from(2), &BigInt::from(1)), ints(&[2]));
        assert_eq!(hirzebruch_jung(&BigInt::from(5), &BigInt::from(2)), ints(&[3, 2]));
        assert_eq!(hirzebruch_jung(&BigInt::from(7), &BigInt::from(3)), ints(&[3, 2, 2]));
    }
}
