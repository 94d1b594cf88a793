//! Exact toric machinery for rings of bounded polynomial functions.
//!
//! The crate computes, without floating point, the ring of polynomial
//! functions bounded on a semi-algebraic subset of an affine toric variety
//! (binomial sets, tentacles and two-dimensional basic sets), together with
//! the supporting combinatorics: rational cones and their duals, Hilbert
//! bases of affine semigroups, rank-2 fans, the toric compatibility
//! condition, intersection matrices on smooth toric surfaces and the
//! boundedness filtration.
//!
//! All integers are arbitrary precision ([`num_bigint::BigInt`]) and all
//! rationals are [`num_rational::BigRational`].

pub mod bounded;
pub mod cone;
pub mod error;
pub mod fan;
pub mod filtration;
pub mod hilbert;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod surface;

pub use bounded::{BasicSet, BinomialSet, LaurentPoly, ProblemSpec, SetSpec, TcReport, TcStatus, Tentacle};
pub use cone::RationalCone;
pub use error::{Error, Result};
pub use fan::Fan2D;
pub use filtration::{FiltrationLevel, LevelDimension, StabilityReport, StabilityVerdict};
pub use hilbert::{ModuleGenerators, SemigroupBasis, ShiftedPolyhedron};
pub use linalg::{inertia, pairing, primitive, Inertia, LatticeVector, Side, SymmetricRationalMatrix};
pub use surface::{DivisorSelection, IitakaResult, ToricSurface};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
