//! Bounded polynomials on semi-algebraic subsets of the torus: the cones
//! K(S) and K₀(S), adapted fans, the toric compatibility condition and the
//! subfan F_S.

mod poly;
mod problem;
mod tc;
mod univariate;

pub use poly::LaurentPoly;
pub use problem::{
    adapted_fan, bounded_cone, bounded_ring, cone_cs, is_trivial_bounded_ring, k_sets, subfan_fs, BasicSet,
    BinomialSet, KSets, ProblemSpec, SetSpec, SubfanFS, Tentacle,
};
pub use tc::{
    certify_closure_meets, certify_k0_membership, check_tc, decide_k0, default_grid, subfan_fs_basic, ClosureWitness,
    K0Certificate, TcReport, TcStatus,
};
pub use univariate::{cell_samples, UPoly};

#[cfg(test)]
mod tests;
