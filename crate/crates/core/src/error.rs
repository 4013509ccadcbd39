//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructed object violates its invariants (bad breakpoints, grids, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested output cannot be resolved on the given discretization.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// An iterative method failed to converge or a factorization broke down.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by bad inputs rather than numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Validation(_) | Error::Resolution(_)
        )
    }
}
