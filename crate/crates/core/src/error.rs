use thiserror::Error;

/// Errors raised by the code-construction, group and decoding routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("monomial index {index} out of range for {n} variables")]
    InvalidMonomial { index: usize, n: usize },

    #[error("row index {row} out of range for N = {len}")]
    RowOutOfRange { row: usize, len: usize },

    #[error("unsupported number of variables {n} (supported: 1..={max})")]
    UnsupportedVariables { n: usize, max: usize },

    #[error("information set is not decreasing: {0} is in I but {1} is not")]
    NotDecreasing(String, String),

    #[error("{what} exceeds capability limit (n = {n}, max {max})")]
    Capability { what: &'static str, n: usize, max: usize },

    #[error("invalid construction spec: {0}")]
    InvalidSpec(String),

    #[error("invalid block structure: {0}")]
    InvalidBlockStructure(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not block lower-triangular for s = {0:?}")]
    NotBlockLowerTriangular(Vec<usize>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("message keys do not match the information set")]
    MessageKeyMismatch,

    #[error("invalid decoder: {0}")]
    InvalidDecoder(String),

    #[error("invalid simulation parameters: {0}")]
    InvalidSimulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
