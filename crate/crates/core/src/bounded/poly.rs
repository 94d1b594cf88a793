use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, pairing, LatticeVector, Side};

/// A Laurent polynomial with rational coefficients: a finitely supported
/// map from M to Q. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<LatticeVector, BigRational>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(rank: usize, terms: Vec<(LatticeVector, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: e.rank(),
                });
            }
            if e.side() != Side::M {
                return Err(Error::SideMismatch("exponents live in M".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from (exponent, numerator, denominator).
    pub fn from_i64(terms: &[(&[i64], i64, i64)]) -> Self {
        let rank = terms.first().map(|t| t.0.len()).expect("at least one term");
        let ts = terms
            .iter()
            .map(|(e, p, q)| (LatticeVector::m(e), BigRational::new((*p).into(), (*q).into())))
            .collect();
        Self::from_terms(rank, ts).expect("well-formed terms")
    }

    pub fn monomial(exp: LatticeVector, coef: BigRational) -> Self {
        let mut p = Self::zero(exp.rank());
        p.add_term(exp, coef);
        p
    }

    fn add_term(&mut self, e: LatticeVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero) + c;
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, e: &LatticeVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut p = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    fn check_v(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        if v.side() != Side::N {
            return Err(Error::SideMismatch("weight vectors live in N".into()));
        }
        Ok(())
    }

    /// The v-homogeneous components in strictly increasing v-degree, each
    /// paired with its degree.
    pub fn homogeneous_components(&self, v: &LatticeVector) -> Result<Vec<(BigInt, LaurentPoly)>> {
        self.check_v(v)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut by_deg: BTreeMap<BigInt, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = pairing(e, v)?;
            by_deg
                .entry(d)
                .or_insert_with(|| LaurentPoly::zero(self.rank))
                .add_term(e.clone(), c.clone());
        }
        Ok(by_deg.into_iter().collect())
    }

    /// The sequence Λ(f, v) of nonzero v-homogeneous components ordered by
    /// increasing degree.
    pub fn lambda_sequence(&self, v: &LatticeVector) -> Result<Vec<LaurentPoly>> {
        Ok(self.homogeneous_components(v)?.into_iter().map(|(_, p)| p).collect())
    }

    /// The initial form in_v(f): the terms of minimal v-degree.
    pub fn initial_form(&self, v: &LatticeVector) -> Result<LaurentPoly> {
        Ok(self
            .homogeneous_components(v)?
            .into_iter()
            .next()
            .map(|(_, p)| p)
            .expect("nonzero polynomial has a component"))
    }

    /// Exact value at a point of the torus. Errors if a coordinate hit by a
    /// negative exponent is zero.
    pub fn eval(&self, xi: &[BigRational]) -> Result<BigRational> {
        if xi.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: xi.len(),
            });
        }
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in xi.iter().zip(e.coords()) {
                t *= pow_rat(x, k)
                    .ok_or_else(|| Error::Malformed("evaluation at a point with a zero coordinate".into()))?;
            }
            total += t;
        }
        Ok(total)
    }
}

/// x^k for an integer k; `None` for 0 raised to a negative power.
pub(crate) fn pow_rat(x: &BigRational, k: &BigInt) -> Option<BigRational> {
    let e = k.abs().to_usize().expect("exponent fits in usize");
    let p = num_traits::pow(x.clone(), e);
    if k.is_negative() {
        if p.is_zero() {
            None
        } else {
            Some(p.recip())
        }
    } else {
        Some(p)
    }
}

fn var_name(rank: usize, i: usize) -> String {
    if rank <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| {
                    if p.is_one() {
                        var_name(self.rank, i)
                    } else {
                        format!("{}^{}", var_name(self.rank, i), p)
                    }
                })
                .collect();
            if mono.is_empty() {
                f.write_str(&format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}
