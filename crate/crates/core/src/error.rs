use thiserror::Error;

use crate::index::CellIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported problem size n={0}; n must be at least 4")]
    UnsupportedSize(usize),

    #[error("invalid cell {cell} for n={n}")]
    InvalidCell { n: usize, cell: CellIndex },

    #[error("ordinal {ordinal} out of range for dimension {dim}")]
    OrdinalOutOfRange { ordinal: usize, dim: usize },

    #[error("{what}: n={n} exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("block matrix is not block-transpose symmetric at blocks ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("diagonal block {0} is not a diagonal matrix")]
    NondiagonalDiagonalBlock(usize),

    #[error("graph skeleton has {0} edges; at most {1} are searched")]
    SkeletonTooLarge(usize, usize),

    #[error("eigenvector reconstruction failed: {0}")]
    ReconstructionFailed(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
