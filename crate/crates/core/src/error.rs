use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular (det = {det})")]
    Singular { det: Rational },

    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("not a permutation of 0..{n}: {perm:?}")]
    InvalidPermutation { n: usize, perm: Vec<usize> },

    #[error("order {n} exceeds the configured cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown property suite '{0}'")]
    UnknownSuite(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
