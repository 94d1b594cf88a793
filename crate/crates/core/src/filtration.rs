//! The filtration L_n of the ring of bounded functions by pole order along
//! the boundary curves Y′ of X_{F_S}, and the total-stability certificate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bounded::{
    adapted_fan, check_tc, default_grid, is_trivial_bounded_ring, k_sets, subfan_fs, ProblemSpec, SetSpec, SubfanFS,
    TcStatus,
};
use crate::cone::RationalCone;
use crate::error::{Error, Result};
use crate::hilbert::{dickson_decompose, ModuleGenerators, ShiftedPolyhedron};
use crate::linalg::{pairing, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelDimension {
    Finite(usize),
    /// An infinite-dimensional space, finitely generated as a module by
    /// `module_rank` elements.
    Infinite {
        module_rank: usize,
    },
}

impl fmt::Display for LevelDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelDimension::Finite(d) => write!(f, "{d}"),
            LevelDimension::Infinite { .. } => f.write_str("infinite"),
        }
    }
}

/// L_n = {β ∈ M : ⟨β, u_ρ⟩ ≥ 0 for rays ρ ⊂ σ, ⟨β, u_ρ⟩ ≥ −n for rays of Y′}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub n: u64,
    pub polyhedron: ShiftedPolyhedron,
    pub generators: ModuleGenerators,
    pub dimension: LevelDimension,
}

/// The polyhedron of level n over the rays of F_S.
pub fn level_polyhedron(fs: &SubfanFS, n: u64) -> Result<ShiftedPolyhedron> {
    let constraints = fs
        .rays
        .iter()
        .map(|(r, in_sigma)| (r.clone(), if *in_sigma { BigInt::zero() } else { BigInt::from(n) }))
        .collect();
    ShiftedPolyhedron::new(Side::M, 2, constraints)
}

/// Builds level n and its minimal module generators over B(S).
pub fn filtration_level(fs: &SubfanFS, n: u64) -> Result<FiltrationLevel> {
    let polyhedron = level_polyhedron(fs, n)?;
    let generators = dickson_decompose(&polyhedron, &fs.support_dual)?;
    let dimension = if polyhedron.is_bounded() {
        LevelDimension::Finite(generators.generators.len())
    } else {
        LevelDimension::Infinite {
            module_rank: generators.generators.len(),
        }
    };
    Ok(FiltrationLevel {
        n,
        polyhedron,
        generators,
        dimension,
    })
}

/// Checks L_m · L_n ⊆ L_{m+n} on module generators.
pub fn filtration_multiplicativity_check(lm: &FiltrationLevel, ln: &FiltrationLevel) -> Result<bool> {
    let (cm, cn) = (lm.polyhedron.constraints(), ln.polyhedron.constraints());
    if cm.len() != cn.len() || cm.iter().zip(cn).any(|(a, b)| a.0 != b.0) {
        return Err(Error::Malformed("levels come from different subfans".into()));
    }
    for a in &lm.generators.generators {
        for b in &ln.generators.generators {
            let s = a.checked_add(b)?;
            for ((u, x), (_, y)) in cm.iter().zip(cn) {
                if pairing(&s, u)? < -(x + y) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityVerdict {
    TotallyStable,
    NotApplicable,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityVerdict::TotallyStable => "TotallyStable",
            StabilityVerdict::NotApplicable => "NotApplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub levels: Vec<FiltrationLevel>,
    pub verdict: StabilityVerdict,
}

/// The subfan F_S of the canonical adapted fan of a binomial set or
/// tentacle, after confirming the compatibility condition.
pub fn canonical_subfan(sigma: &RationalCone, set: &SetSpec) -> Result<SubfanFS> {
    let spec = ProblemSpec::new(sigma.clone(), set.clone())?;
    let fan = adapted_fan(set, sigma)?;
    let report = check_tc(&fan, &spec, &default_grid())?;
    if report.status != TcStatus::Verified {
        return Err(Error::TcNotVerified(report.reason));
    }
    subfan_fs(&fan, sigma, &k_sets(set)?.k0)
}

/// When B(S) = R every level is finite-dimensional and the preordering
/// generated by the defining binomials is totally stable; the dimensions of
/// L_0, …, L_{N_max} are reported. Otherwise the certificate does not apply.
pub fn total_stability_certificate(sigma: &RationalCone, set: &SetSpec, n_max: u64) -> Result<StabilityReport> {
    if matches!(set, SetSpec::Basic(_)) {
        return Err(Error::Malformed(
            "the stability certificate covers binomial sets and tentacles".into(),
        ));
    }
    let fs = canonical_subfan(sigma, set)?;
    if !is_trivial_bounded_ring(sigma, set)? {
        return Ok(StabilityReport {
            levels: Vec::new(),
            verdict: StabilityVerdict::NotApplicable,
        });
    }
    let levels = (0..=n_max)
        .map(|n| filtration_level(&fs, n))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(levels.iter().all(|l| matches!(l.dimension, LevelDimension::Finite(_))));
    Ok(StabilityReport {
        levels,
        verdict: StabilityVerdict::TotallyStable,
    })
}
