use thiserror::Error;

/// Errors shared across the whole engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} is not invertible mod {1}")]
    NonInvertibleDenominator(i64, u32),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("monomials have different variable counts")]
    ArityMismatch,
    #[error("resource limit exceeded: {0}")]
    ResourceLimitExceeded(String),
    #[error("module has infinite length")]
    InfiniteLength,
    #[error("complex is not a resolution: homology nonzero at index {0}")]
    NotAResolution(usize),
    #[error("tensor product does not have finite length")]
    SerreConditionViolated,
    #[error("computation inconclusive: {0}")]
    Inconclusive(String),
    #[error("ideal is not primary to the irrelevant maximal ideal")]
    NotPrimary,
    #[error("operation requires a polynomial ring without relations")]
    UnsupportedRing,
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
