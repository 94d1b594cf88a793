//! Integer and rational linear algebra on plain coordinate vectors: Hermite
//! normal form, integer kernels, unimodular column reduction and the
//! quotient of a lattice by a saturated sublattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .sum()
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive_raw(v: &[BigInt]) -> Vec<BigInt> {
    let g = crate::linalg::gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to the primitive integer vector pointing the
/// same way. The zero vector maps to the zero vector.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive_raw(&ints)
}

pub fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Reduced row echelon form over Q. Returns the nonzero rows and their
/// pivot columns.
pub fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let q: Vec<Vec<BigRational>> = rows.iter().map(|r| to_q(r)).collect();
    rref(&q, n).1.len()
}

/// A basis of the rational nullspace {x : rows·x = 0}, each basis vector
/// scaled to a primitive integer vector.
pub fn nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let q: Vec<Vec<BigRational>> = rows.iter().map(|r| to_q(r)).collect();
    let (r, piv) = rref(&q, ncols);
    let mut out = Vec::new();
    for free in 0..ncols {
        if piv.contains(&free) {
            continue;
        }
        let mut x = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for (row, &p) in r.iter().zip(&piv) {
            x[p] = -row[free].clone();
        }
        out.push(clear_denominators(&x));
    }
    out
}

/// Coordinates of `x` in the span of the linearly independent `basis`,
/// or `None` if `x` is not in that span.
pub fn express_in_basis(basis: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = x.len();
    let d = basis.len();
    // Solve Σ λ_j b_j = x: augmented system with n rows, d+1 columns.
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b[i].clone())).collect();
            r.push(BigRational::from_integer(x[i].clone()));
            r
        })
        .collect();
    let (r, piv) = rref(&rows, d + 1);
    if piv.contains(&d) {
        return None;
    }
    let mut lam = vec![BigRational::zero(); d];
    for (row, &p) in r.iter().zip(&piv) {
        lam[p] = row[d].clone();
    }
    Some(lam)
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// The result is upper echelon with positive pivots, entries above each
/// pivot reduced into [0, pivot), and no zero rows. It depends only on the
/// lattice spanned, not on the generating set.
pub fn hnf(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pr = 0;
    for c in 0..ncols {
        if pr == a.len() {
            break;
        }
        for i in pr + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let x = a[pr][c].clone();
            let y = a[i][c].clone();
            let eg = x.extended_gcd(&y);
            let (s, t, g) = (eg.x, eg.y, eg.gcd);
            let xg = &x / &g;
            let yg = &y / &g;
            for k in 0..ncols {
                let p = &a[pr][k];
                let q = &a[i][k];
                let np = &s * p + &t * q;
                let nq = &xg * q - &yg * p;
                a[pr][k] = np;
                a[i][k] = nq;
            }
        }
        if a[pr][c].is_zero() {
            continue;
        }
        if a[pr][c].is_negative() {
            for x in a[pr].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..pr {
            let f = a[i][c].div_floor(&a[pr][c]);
            if !f.is_zero() {
                for k in 0..ncols {
                    let t = &f * &a[pr][k];
                    a[i][k] -= t;
                }
            }
        }
        pr += 1;
    }
    a.truncate(pr);
    a
}

/// Reduces `v` modulo the lattice whose HNF is `h`, giving the canonical
/// representative of its coset.
pub fn hnf_reduce(v: &[BigInt], h: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for row in h {
        let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
        let f = v[p].div_floor(&row[p]);
        if !f.is_zero() {
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &f * r;
            }
        }
    }
    v
}

/// Unimodular column reduction: returns (U, U⁻¹, r) with E·U having nonzero
/// columns only among the first r, where r is the rank of E. The last
/// n − r columns of U form a basis of the integer kernel of E.
pub fn column_reduce(e: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let mut a: Vec<Vec<BigInt>> = e.to_vec();
    let mut u = identity(n);
    let mut uinv = identity(n);
    let mut c = 0;
    for i in 0..a.len() {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let x = a[i][c].clone();
            let y = a[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (s, t, g) = (eg.x, eg.y, eg.gcd);
            let xg = &x / &g;
            let yg = &y / &g;
            // columns (c, j) ← (s·col_c + t·col_j, −(y/g)·col_c + (x/g)·col_j)
            for row in a.iter_mut().chain(u.iter_mut()) {
                let p = row[c].clone();
                let q = row[j].clone();
                row[c] = &s * &p + &t * &q;
                row[j] = &xg * &q - &yg * &p;
            }
            // inverse acts on rows (c, j) with [[x/g, y/g], [−t, s]]
            let rc = uinv[c].clone();
            let rj = uinv[j].clone();
            for k in 0..n {
                uinv[c][k] = &xg * &rc[k] + &yg * &rj[k];
                uinv[j][k] = -&t * &rc[k] + &s * &rj[k];
            }
        }
        if !a[i][c].is_zero() {
            c += 1;
        }
    }
    (u, uinv, c)
}

pub fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose(m: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// A Z-basis of {x ∈ Zⁿ : E x = 0}, in Hermite normal form.
pub fn integer_kernel(e: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let (u, _, r) = column_reduce(e, n);
    let cols: Vec<Vec<BigInt>> = (r..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect();
    hnf(&cols, n)
}

/// The splitting Zⁿ ≅ Z^q ⊕ (L ∩ Zⁿ) for a rational subspace L, given by a
/// unimodular change of basis whose last columns span L ∩ Zⁿ.
#[derive(Clone, Debug)]
pub struct LatticeSplit {
    n: usize,
    u: Vec<Vec<BigInt>>,
    uinv: Vec<Vec<BigInt>>,
    quot_dim: usize,
}

impl LatticeSplit {
    /// L is the kernel of the integer matrix `e`.
    pub fn from_equations(e: &[Vec<BigInt>], n: usize) -> Self {
        let (u, uinv, r) = column_reduce(e, n);
        LatticeSplit {
            n,
            u,
            uinv,
            quot_dim: r,
        }
    }

    /// L is spanned by `basis`.
    pub fn from_subspace(basis: &[Vec<BigInt>], n: usize) -> Self {
        let e = nullspace(basis, n);
        Self::from_equations(&e, n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn quot_dim(&self) -> usize {
        self.quot_dim
    }

    /// Coordinates of the image of `x` in Zⁿ / (L ∩ Zⁿ).
    pub fn to_quotient(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.uinv[..self.quot_dim].iter().map(|row| dot(row, x)).collect()
    }

    /// The representative of `y` with zero L-component in the split basis.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        (0..self.n).map(|i| dot(&self.u[i][..self.quot_dim], y)).collect()
    }

    /// A Z-basis of L ∩ Zⁿ, in Hermite normal form.
    pub fn sublattice_basis(&self) -> Vec<Vec<BigInt>> {
        let cols: Vec<Vec<BigInt>> = (self.quot_dim..self.n)
            .map(|j| self.u.iter().map(|row| row[j].clone()).collect())
            .collect();
        hnf(&cols, self.n)
    }

    /// For a dual vector `a` vanishing on L, the vector a' with
    /// ⟨a, x⟩ = ⟨a', to_quotient(x)⟩ for all x.
    pub fn dual_to_quotient(&self, a: &[BigInt]) -> Vec<BigInt> {
        (0..self.quot_dim)
            .map(|j| self.u.iter().zip(a).map(|(row, ai)| &row[j] * ai).sum())
            .collect()
    }

    /// Inverse of `dual_to_quotient`: extends a' by zero on L.
    pub fn dual_lift(&self, a: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|k| (0..self.quot_dim).map(|j| &a[j] * &self.uinv[j][k]).sum())
            .collect()
    }
}
