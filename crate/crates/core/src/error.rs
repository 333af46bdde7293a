use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("not found: {0}")]
    NotFound(String),
    /// A bound the construction is proven to satisfy was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable kind, used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::ResourceLimit(_) => "resource-limit",
            Error::NotFound(_) => "not-found",
            Error::Internal(_) => "internal-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
