//! Dense univariate polynomials over Q with Sturm-sequence root isolation.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; −1 stands for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if r.len() < dl {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dl + 1];
        let lead = d.lead().clone();
        for k in (0..q.len()).rev() {
            let f = &r[k + dl - 1] / &lead;
            if f.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= &f * c;
            }
            q[k] = f;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead().clone();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors (up to a constant).
    pub fn squarefree(&self) -> Self {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Cauchy bound: every real root has absolute value below it.
    pub fn root_bound(&self) -> BigRational {
        let l = self.lead().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &l)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

/// Sturm sequence of a squarefree polynomial.
struct Sturm {
    seq: Vec<UPoly>,
}

impl Sturm {
    fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(UPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        seq.pop();
        Sturm { seq }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<bool> = self
            .seq
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in (a, b].
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Rationals that meet every connected component of {x ∈ R : p(x) ≠ 0}:
/// one point left of all roots, one strictly between each pair of
/// consecutive roots, and one right of all roots. For p without real roots
/// (or constant p) a single point 0 is returned.
pub fn cell_samples(p: &UPoly) -> Vec<BigRational> {
    if p.degree() <= 0 {
        return vec![BigRational::zero()];
    }
    let sq = p.squarefree();
    let sturm = Sturm::new(&sq);
    let bound = sq.root_bound();
    let lo = -bound.clone();
    let total = sturm.count(&lo, &bound);
    if total == 0 {
        return vec![BigRational::zero()];
    }
    // Isolate: intervals (a, b] each holding exactly one root.
    let mut pending = vec![(lo.clone(), bound.clone(), total)];
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((a, b, k)) = pending.pop() {
        if k == 1 {
            isolated.push((a, b));
            continue;
        }
        let m = (&a + &b) / BigRational::from_integer(2.into());
        let left = sturm.count(&a, &m);
        if left > 0 {
            pending.push((a, m.clone(), left));
        }
        if k - left > 0 {
            pending.push((m, b, k - left));
        }
    }
    isolated.sort();
    // Shrink until consecutive intervals are separated by a positive gap.
    let two = BigRational::from_integer(2.into());
    loop {
        let mut changed = false;
        for i in 0..isolated.len().saturating_sub(1) {
            if isolated[i].1 < isolated[i + 1].0 {
                continue;
            }
            changed = true;
            for j in [i, i + 1] {
                let (a, b) = isolated[j].clone();
                let m = (&a + &b) / &two;
                isolated[j] = if sturm.count(&a, &m) == 1 { (a, m) } else { (m, b) };
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = vec![lo - BigRational::one()];
    for w in isolated.windows(2) {
        out.push((&w[0].1 + &w[1].0) / &two);
    }
    out.push(bound + BigRational::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(f.squarefree(), p(&[-2, 1, 1]));
        let (q, r) = f.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn samples_separate_roots() {
        // roots -2, 0, 0 (double), 1/2 ... use x(x+2)(2x-1)x
        let f = p(&[0, 1]).mul(&p(&[2, 1])).mul(&p(&[-1, 2])).mul(&p(&[0, 1]));
        let s = cell_samples(&f);
        assert_eq!(s.len(), 4);
        for x in &s {
            assert!(!f.eval(x).is_zero());
        }
        let signs: Vec<bool> = s.iter().map(|x| f.eval(x).is_positive()).collect();
        // sign pattern across roots -2, 0, 1/2 of x^2(x+2)(2x-1)
        assert_eq!(signs, vec![true, false, false, true]);
        assert_eq!(cell_samples(&p(&[1, 0, 1])), vec![BigRational::zero()]);
    }

    #[test]
    fn close_roots() {
        // (100x - 1)(101x - 1)
        let f = p(&[-1, 100]).mul(&p(&[-1, 101]));
        let s = cell_samples(&f);
        assert_eq!(s.len(), 3);
        let mid = &s[1];
        assert!(*mid > BigRational::new(1.into(), 101.into()) && *mid < BigRational::new(1.into(), 100.into()));
    }
}
