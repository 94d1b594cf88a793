use thiserror::Error;

/// Errors raised by the toric machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("lattice side mismatch: {0}")]
    SideMismatch(String),
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("rank {rank} exceeds the supported limit {limit}")]
    RankLimit { rank: usize, limit: usize },
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("cone is not pointed")]
    NotPointed,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not adapted: {0}")]
    NotAdapted(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("divisor selection must be nonempty")]
    EmptySelection,
    #[error("matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("recession cone mismatch: {0}")]
    RecessionMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("condition (TC) is not verified: {0}")]
    TcNotVerified(String),
    #[error("internal consistency check failed: {0}")]
    Disagreement(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
