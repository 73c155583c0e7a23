use thiserror::Error;

use crate::feasibility::Reason;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension {n} exceeds cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("matrix must have at least one row")]
    Empty,

    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}")]
    WrongEntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("entry {value} at ({row}, {col}) is not +1 or -1")]
    InvalidEntry { row: usize, col: usize, value: i64 },

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no absolutely flat idempotent exists for (n, k, r) = ({n}, {k}, {r}): {reason}")]
    Infeasible {
        n: usize,
        k: usize,
        r: usize,
        reason: Reason,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not a flat idempotent at scale k = {k}")]
    NotIdempotent { k: usize },

    #[error("expected a rank 2 idempotent, got rank {rank}")]
    WrongRank { rank: usize },

    #[error("integer overflow during fraction-free elimination")]
    RankOverflow,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
