//! Lattice vectors, the M–N pairing and exact inertia of symmetric matrices.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two dual lattices a vector lives in.
///
/// `M` is the character lattice (exponents of monomials), `N` the
/// cocharacter lattice (one-parameter subgroups, fan rays).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    M,
    N,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::M => Side::N,
            Side::N => Side::M,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::M => f.write_str("M"),
            Side::N => f.write_str("N"),
        }
    }
}

/// An element of M or N: an integer tuple of fixed rank tagged with its side.
///
/// Ordering is lexicographic on the coordinates (then side), which is the
/// canonical order used for generator lists throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
    side: Side,
}

impl LatticeVector {
    pub fn new(side: Side, coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("lattice vector of rank 0".into()));
        }
        Ok(LatticeVector { coords, side })
    }

    /// Builds a vector from machine integers. Panics on an empty slice.
    pub fn from_i64(side: Side, coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "lattice vector of rank 0");
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
            side,
        }
    }

    pub fn m(coords: &[i64]) -> Self {
        Self::from_i64(Side::M, coords)
    }

    pub fn n(coords: &[i64]) -> Self {
        Self::from_i64(Side::N, coords)
    }

    pub fn zero(side: Side, rank: usize) -> Self {
        assert!(rank > 0);
        LatticeVector {
            coords: vec![BigInt::zero(); rank],
            side,
        }
    }

    pub fn unit(side: Side, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(side, rank);
        v.coords[i] = BigInt::one();
        v
    }

    pub(crate) fn from_raw(side: Side, coords: Vec<BigInt>) -> Self {
        debug_assert!(!coords.is_empty());
        LatticeVector { coords, side }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Same coordinates, reinterpreted in the other lattice.
    pub fn with_side(&self, side: Side) -> Self {
        LatticeVector {
            coords: self.coords.clone(),
            side,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        if self.side != other.side {
            return Err(Error::SideMismatch(format!(
                "cannot combine a vector of {} with one of {}",
                self.side, other.side
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
            side: self.side,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
            side: self.side,
        }
    }

    /// Coordinates as machine integers, when they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coords.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

// Operator forms panic on incompatible operands; use the checked_* methods
// on untrusted input.
impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.checked_add(rhs).expect("incompatible lattice vectors")
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.checked_sub(rhs).expect("incompatible lattice vectors")
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
            side: self.side,
        }
    }
}

/// The pairing ⟨α, v⟩ between M and N.
///
/// The two arguments must live in opposite lattices and have equal rank.
pub fn pairing(alpha: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
    if alpha.rank() != v.rank() {
        return Err(Error::RankMismatch {
            expected: alpha.rank(),
            found: v.rank(),
        });
    }
    if alpha.side == v.side {
        return Err(Error::SideMismatch(format!(
            "pairing needs one vector in M and one in N, both are in {}",
            alpha.side
        )));
    }
    Ok(crate::lattice::dot(&alpha.coords, &v.coords))
}

/// Divides `v` by the gcd of its coordinates.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector {
        coords: crate::lattice::primitive_raw(&v.coords),
        side: v.side,
    })
}

/// Parses "3", "-3", "−3" (unicode minus) or "1/2".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    let t = s.trim().replace('\u{2212}', "-");
    t.parse()
        .map_err(|_| Error::Malformed(format!("not an integer: {s:?}")))
}

/// "p/q" for non-integers, "p" otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A symmetric matrix with exact rational entries. Only the lower triangle
/// is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricRationalMatrix {
    size: usize,
    lower: Vec<BigRational>,
}

impl SymmetricRationalMatrix {
    pub fn zeros(size: usize) -> Self {
        SymmetricRationalMatrix {
            size,
            lower: vec![BigRational::zero(); size * (size + 1) / 2],
        }
    }

    /// Builds the matrix from full rows, rejecting non-square or
    /// non-symmetric input.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput("matrix of size 0".into()));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::Malformed(format!(
                    "matrix is not square: row of length {} in a {n}-row matrix",
                    r.len()
                )));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate().take(i + 1) {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    fn idx(i: usize, j: usize) -> usize {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        i * (i + 1) / 2 + j
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.lower[Self::idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        let k = Self::idx(i, j);
        self.lower[k] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Simultaneous row/column permutation: entry (i, j) of the result is
    /// entry (perm[i], perm[j]) of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.size);
        let mut out = Self::zeros(self.size);
        for i in 0..self.size {
            for j in 0..=i {
                out.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        out
    }

    /// The congruence transform PᵀAP for a square integer matrix P
    /// (given as rows).
    pub fn congruent(&self, p: &[Vec<BigInt>]) -> Self {
        let n = self.size;
        assert_eq!(p.len(), n);
        // AP
        let ap: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(BigRational::zero(), |acc, k| {
                            acc + self.get(i, k) * BigRational::from_integer(p[k][j].clone())
                        })
                    })
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = (0..n).fold(BigRational::zero(), |acc, k| {
                    acc + BigRational::from_integer(p[k][i].clone()) * &ap[k][j]
                });
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.size);
        (0..self.size)
            .map(|i| {
                x.iter().enumerate().fold(BigRational::zero(), |acc, (j, xj)| {
                    acc + self.get(i, j) * BigRational::from_integer(xj.clone())
                })
            })
            .collect()
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> BigRational {
        let mut a = self.to_rows();
        let n = self.size;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        det
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Inertia {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn size(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_negative_definite(&self) -> bool {
        self.n_plus == 0 && self.n_zero == 0
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.n_plus, self.n_minus, self.n_zero]
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Exact inertia by symmetric congruence elimination.
///
/// A nonzero diagonal pivot contributes its sign. When every remaining
/// diagonal entry vanishes but some off-diagonal entry a_ij does not, the
/// 2×2 block [[0, a], [a, 0]] is split off (one +1, one −1). Whatever is
/// left once the active block is identically zero counts towards n_zero.
pub fn inertia(a: &SymmetricRationalMatrix) -> Inertia {
    let mut m = a.to_rows();
    let mut active: Vec<usize> = (0..a.size()).collect();
    let mut out = Inertia::new(0, 0, 0);

    loop {
        if active.is_empty() {
            break;
        }
        if let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let p = active.remove(pos);
            let piv = m[p][p].clone();
            if piv.is_positive() {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            for &i in &active {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] / &piv;
                for &j in &active {
                    let t = &f * &m[p][j];
                    m[i][j] -= t;
                }
            }
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .find_map(|(x, &i)| active[x + 1..].iter().find(|&&j| !m[i][j].is_zero()).map(|&j| (i, j)));
        let Some((p, q)) = pair else {
            out.n_zero += active.len();
            break;
        };
        out.n_plus += 1;
        out.n_minus += 1;
        active.retain(|&k| k != p && k != q);
        // Schur complement against B = [[0, a], [a, 0]], B⁻¹ = [[0, 1/a], [1/a, 0]]:
        // m_ij -= (m_ip m_qj + m_iq m_pj) / a
        let a_pq = m[p][q].clone();
        let col_p: Vec<BigRational> = active.iter().map(|&i| m[i][p].clone()).collect();
        let col_q: Vec<BigRational> = active.iter().map(|&i| m[i][q].clone()).collect();
        for (x, &i) in active.iter().enumerate() {
            for (y, &j) in active.iter().enumerate() {
                let t = (&col_p[x] * &col_q[y] + &col_q[x] * &col_p[y]) / &a_pq;
                m[i][j] -= t;
            }
        }
    }
    out
}

/// gcd of a slice; zero for an all-zero slice.
pub(crate) fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn pairing_examples() {
        let p = |a: &[i64], b: &[i64]| pairing(&LatticeVector::m(a), &LatticeVector::n(b)).unwrap();
        assert_eq!(p(&[1, 0], &[0, 1]), BigInt::from(0));
        assert_eq!(p(&[2, 1], &[1, 1]), BigInt::from(3));
        // k = 2: the rays ±(e1 - k e2) lie on the line k v1 + v2 = 0
        assert_eq!(p(&[2, 1], &[1, -2]), BigInt::from(0));
    }

    #[test]
    fn pairing_errors() {
        assert!(matches!(
            pairing(&LatticeVector::m(&[1, 0]), &LatticeVector::n(&[1, 0, 0])),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            pairing(&LatticeVector::m(&[1, 0]), &LatticeVector::m(&[1, 0])),
            Err(Error::SideMismatch(_))
        ));
    }

    #[test]
    fn primitive_examples() {
        let p = |a: &[i64]| primitive(&LatticeVector::n(a)).unwrap();
        assert_eq!(p(&[2, 4]), LatticeVector::n(&[1, 2]));
        assert_eq!(p(&[0, -3]), LatticeVector::n(&[0, -1]));
        assert_eq!(p(&[6, -9]), LatticeVector::n(&[2, -3]));
        assert_eq!(primitive(&LatticeVector::n(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn arithmetic_checks_side_and_rank() {
        let a = LatticeVector::m(&[1, 2]);
        assert!(a.checked_add(&LatticeVector::n(&[1, 2])).is_err());
        assert!(a.checked_add(&LatticeVector::m(&[1, 2, 3])).is_err());
        assert_eq!(&a + &a, LatticeVector::m(&[2, 4]));
        assert_eq!(-&a, LatticeVector::m(&[-1, -2]));
    }

    #[test]
    fn inertia_small() {
        let d = SymmetricRationalMatrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(inertia(&d), Inertia::new(1, 1, 0));
        // zero diagonal forces the 2x2 split
        let h = SymmetricRationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(inertia(&h), Inertia::new(1, 1, 0));
        let z = SymmetricRationalMatrix::from_i64_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(inertia(&z), Inertia::new(0, 0, 2));
        let ones = SymmetricRationalMatrix::from_i64_rows(&[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap();
        assert_eq!(inertia(&ones), Inertia::new(1, 0, 2));
    }

    #[test]
    fn rejects_asymmetric() {
        let r = SymmetricRationalMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(r, Err(Error::NotSymmetric { row: 1, col: 0 }));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("\u{2212}3").unwrap(), rat(-3));
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&BigRational::new((-2).into(), 4.into())), "-1/2");
    }

    #[test]
    fn determinant_matches_known() {
        let a = SymmetricRationalMatrix::from_i64_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
        assert_eq!(a.determinant(), rat(3));
    }
}
