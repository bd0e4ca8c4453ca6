//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator vanished in an exact computation.
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    /// A parameter specialization failed a genericity requirement (singular
    /// triangular system, vanishing Gram determinant, ...).
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    /// A partition did not satisfy a shape precondition.
    #[error("shape error: {0}")]
    ShapeError(String),
    /// A Laurent polynomial was expected to be BC_n-symmetric but is not.
    #[error("not BC_n-symmetric: {0}")]
    NotSymmetric(String),
    /// An exact polynomial division left a remainder.  This signals an
    /// internal bug rather than bad input.
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    /// Malformed CLI or file configuration.
    #[error("config error: {0}")]
    ConfigError(String),
    /// Malformed rational or partition literal.
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
