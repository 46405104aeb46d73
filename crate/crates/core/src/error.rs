use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),

    #[error("not a Seifert matrix: det(M - M^T) = {0}, expected 1")]
    InvalidSeifert(BigInt),

    #[error("expected genus {expected}, got {found}")]
    GenusMismatch { expected: usize, found: usize },

    #[error("bad wedge index: {0}")]
    BadIndex(String),

    #[error("invalid metabolizer: {0}")]
    InvalidMetabolizer(String),

    #[error("unknown entry at {0}")]
    UnknownEntry(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
