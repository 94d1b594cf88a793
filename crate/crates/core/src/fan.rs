//! Fans in the rank-2 lattice N: construction, refinement, star
//! subdivision, smoothness and smooth resolution.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::hilbert::hilbert_basis;
use crate::lattice::det2;
use crate::linalg::{primitive, LatticeVector, Side};

/// A fan in N_R ≅ R² given by its rays in counterclockwise order, starting
/// at the ray of smallest angle measured from (1, 0).
///
/// The 2-cones are implied: consecutive rays v_i, v_{i+1} (cyclically) span
/// a 2-cone whenever det(v_i, v_{i+1}) > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
    complete: bool,
}

/// 0 for angles in [0, π), 1 for [π, 2π).
fn half(v: &[BigInt]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Exact comparison of the angles of two nonzero vectors of R², measured
/// counterclockwise from (1, 0) in [0, 2π).
pub fn angle_cmp(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    let (x, y) = (a.coords(), b.coords());
    half(x).cmp(&half(y)).then_with(|| {
        let c = det2(x, y);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub fn det(a: &LatticeVector, b: &LatticeVector) -> BigInt {
    det2(a.coords(), b.coords())
}

fn check_ray(v: &LatticeVector) -> Result<()> {
    if v.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: v.rank(),
        });
    }
    if v.side() != Side::N {
        return Err(Error::SideMismatch("fan rays must live in N".into()));
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

impl Fan2D {
    /// Primitivizes, deduplicates and sorts `rays` by angle.
    pub fn new(rays: &[LatticeVector]) -> Result<Self> {
        if rays.is_empty() {
            return Err(Error::EmptyInput("a fan needs at least one ray".into()));
        }
        let mut rs: Vec<LatticeVector> = Vec::with_capacity(rays.len());
        for r in rays {
            check_ray(r)?;
            rs.push(primitive(r)?);
        }
        rs.sort_by(angle_cmp);
        rs.dedup();
        let complete = rs.len() >= 2 && (0..rs.len()).all(|i| det(&rs[i], &rs[(i + 1) % rs.len()]).is_positive());
        Ok(Fan2D { rays: rs, complete })
    }

    pub fn from_i64(rays: &[[i64; 2]]) -> Result<Self> {
        let v: Vec<LatticeVector> = rays.iter().map(|r| LatticeVector::n(r)).collect();
        Self::new(&v)
    }

    /// The standard fan of P²: e₁, e₂, −e₁−e₂.
    pub fn projective_plane() -> Self {
        Self::from_i64(&[[1, 0], [0, 1], [-1, -1]]).expect("valid rays")
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        let p = primitive(v).ok()?;
        self.rays.iter().position(|r| *r == p)
    }

    /// Index pairs (i, i+1 mod len) of the implied 2-cones.
    pub fn two_cones(&self) -> Vec<(usize, usize)> {
        let n = self.rays.len();
        (0..n)
            .map(|i| (i, (i + 1) % n))
            .filter(|&(i, j)| i != j && det(&self.rays[i], &self.rays[j]).is_positive())
            .collect()
    }

    pub fn two_cone(&self, i: usize, j: usize) -> RationalCone {
        RationalCone::from_generators(Side::N, 2, &[self.rays[i].clone(), self.rays[j].clone()]).expect("rank-2 rays")
    }

    /// Whether `c` is a cone of the fan: {0}, one of its rays, or one of its
    /// 2-cones.
    pub fn has_cone(&self, c: &RationalCone) -> bool {
        if c.rank() != 2 || c.side() != Side::N || !c.is_pointed() {
            return false;
        }
        let rays = c.rays();
        match rays.len() {
            0 => true,
            1 => self.rays.contains(&rays[0]),
            2 => self.two_cones().iter().any(|&(i, j)| self.two_cone(i, j) == *c),
            _ => false,
        }
    }

    /// The fan with the union of ray sets.
    pub fn refine(&self, extra: &[LatticeVector]) -> Result<Self> {
        let mut all = self.rays.clone();
        all.extend(extra.iter().cloned());
        Self::new(&all)
    }

    /// Inserts primitive(v_i + v_{i+1}) into the 2-cone between ray i and
    /// ray i+1 (cyclically).
    pub fn star_subdivide(&self, i: usize) -> Result<Self> {
        if !self.complete {
            return Err(Error::NotComplete);
        }
        let n = self.rays.len();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let s = &self.rays[i] + &self.rays[(i + 1) % n];
        self.refine(&[s])
    }

    /// det(v_i, v_{i+1}) for every cyclically adjacent pair.
    pub fn adjacent_determinants(&self) -> Vec<BigInt> {
        let n = self.rays.len();
        (0..n).map(|i| det(&self.rays[i], &self.rays[(i + 1) % n])).collect()
    }

    pub fn is_smooth(&self) -> Result<bool> {
        if !self.complete {
            return Err(Error::NotComplete);
        }
        Ok(self.adjacent_determinants().iter().all(|d| d.is_one()))
    }

    /// Inserts the interior Hilbert-basis elements of every non-unimodular
    /// 2-cone. On a complete fan the result is smooth and minimal.
    pub fn smooth_resolution(&self) -> Self {
        let mut extra = Vec::new();
        for (i, j) in self.two_cones() {
            if det(&self.rays[i], &self.rays[j]).is_one() {
                continue;
            }
            let hb = hilbert_basis(&self.two_cone(i, j)).expect("rank 2 is always supported");
            extra.extend(
                hb.generators()
                    .iter()
                    .filter(|g| **g != self.rays[i] && **g != self.rays[j])
                    .cloned(),
            );
        }
        self.refine(&extra).expect("rays are valid")
    }
}

impl fmt::Display for Fan2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("fan [")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]{}", if self.complete { " (complete)" } else { "" })
    }
}

pub fn make_fan(rays: &[LatticeVector]) -> Result<Fan2D> {
    Fan2D::new(rays)
}
