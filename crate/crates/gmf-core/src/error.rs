//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by matrix, group, and harness operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimension mismatches, non-square inputs, or inputs that are not
    /// Hermitian within tolerance.
    #[error("shape error: {0}")]
    Shape(String),
    /// A configured size cap would be exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// Invalid domain objects: malformed permutations, inconsistent
    /// character tables, out-of-range indices.
    #[error("validation error: {0}")]
    Validation(String),
    /// Factorization failure on singular or indefinite input.
    #[error("decomposition error: {0}")]
    Decomposition(String),
    /// An internal cross-check failed beyond its tolerance.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Capacity(_) => "capacity",
            Error::Validation(_) => "validation",
            Error::Decomposition(_) => "decomposition",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
