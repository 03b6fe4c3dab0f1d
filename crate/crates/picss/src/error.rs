use thiserror::Error;

/// Failure classes of the engine. Each maps to a distinct CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("undetermined differential: {0}")]
    Undetermined(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Unsupported(_) => "unsupported",
            Error::Precondition(_) => "precondition",
            Error::TooLarge(_) => "too-large",
            Error::Verification(_) => "verification",
            Error::Internal(_) => "internal",
            Error::Undetermined(_) => "undetermined",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
