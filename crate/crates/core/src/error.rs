use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed-field operation: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("zero representative of a projective point")]
    ZeroPoint,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("biform is not symmetric")]
    NotSymmetric,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("retry budget exhausted after {0} draws")]
    RetryBudget(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for mathematical degeneracy signals as opposed to malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(self, Error::Degenerate(_) | Error::RetryBudget(_) | Error::Singular | Error::ZeroInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
