use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// Variants map onto the CLI exit-code contract: `InvalidArgument`/`Io` are
/// usage errors (exit 1), `Certificate` is a verification failure (exit 2),
/// and `Resource` means a configured cap was hit (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("certificate violated: {0}")]
    Certificate(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn certificate(msg: impl Into<String>) -> Self {
        Error::Certificate(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
