use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two values could not be ordered at the working precision.
    #[error("ambiguous endpoint comparison: {0}")]
    AmbiguousEndpoint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("no admissible prime found up to {prime_limit}")]
    NotFound { prime_limit: u64 },

    /// A small-coefficient rational relation among the endpoints was detected.
    #[error("endpoints fail the rational independence probe: relation {relation:?}")]
    IndependenceSuspect { relation: Vec<i64> },

    #[error("spectrum terms overlap at frequency numerator {value}")]
    OverlappingTerms { value: i64 },

    #[error("shift {shift} is not a multiple of the spectrum scale {scale}")]
    IncompatibleShift { shift: String, scale: String },

    #[error("density {beta} is below the generator floor {floor}")]
    DegenerateBeta { beta: String, floor: String },

    #[error("level {level} is not contained in {modulus}Z")]
    LevelNotInNZ { level: usize, modulus: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("shift list is not a permutation of 1..={0}")]
    NotPermutation(usize),

    #[error("interval {interval} receives no full cell at N = {modulus}")]
    DegenerateCoverage { interval: usize, modulus: u64 },

    #[error("folded level sets do not follow the expected pattern: {0}")]
    PatternMismatch(String),

    #[error("subset index set is empty")]
    EmptySubset,

    #[error("level {level} cannot be served by a supported generator: {reason}")]
    UnsupportedASet { level: usize, reason: String },

    #[error("no frequencies in window T = {0}")]
    EmptyWindow(f64),

    #[error("invalid coordinate subset: {0}")]
    InvalidSubset(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
