use alloc::string::String;

/// Errors raised by the exact pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
    #[error("value is not real")]
    NotReal,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("class function does not decompose into a virtual character: {0}")]
    Decomposition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("column {0} has irrational entries and cannot be strengthened")]
    IrrationalColumn(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("constraint system is unbounded (detected at index {0})")]
    Unbounded(usize),
    #[error("more than {0} points; enumeration stopped")]
    LimitExceeded(u64),
    #[error("enumeration interrupted")]
    Interrupted,
    #[error("brute force refused: dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("not an S-character: negative value at class {0}")]
    NotSCharacter(String),
    #[error("invalid fusion map: {0}")]
    InvalidFusion(String),
}

pub type Result<T> = core::result::Result<T, Error>;
