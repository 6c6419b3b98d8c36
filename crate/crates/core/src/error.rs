use thiserror::Error;

/// Errors raised by the library.
///
/// `InvalidInput` maps to CLI exit code 2, `Verification` to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a sublattice: {0}")]
    Containment(String),
    #[error("infinite group where a finite one is required: {0}")]
    Infinite(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
