use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group mismatch: expected an element of {expected}, got {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("group too large for dense path: order {order} exceeds cap {cap}")]
    TooLarge { order: String, cap: usize },

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown irrep label `{label}` for {group}")]
    UnknownIrrep { label: String, group: String },

    #[error("the trivial irrep does not define an expander; choose a non-trivial irrep")]
    TrivialIrrep,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("fixed vector must have unit norm (norm = {0})")]
    NonUnitVector(f64),

    #[error("linear map has no adjoint rule; power iteration on M^dagger M is unavailable")]
    NoAdjoint,

    #[error("dimension {dim} exceeds dense cap {cap}; use the iterative path")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("generator index {index} out of range (have {count})")]
    GeneratorIndex { index: usize, count: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
