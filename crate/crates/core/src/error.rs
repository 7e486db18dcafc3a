use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input outside the operation's domain (non-root vector, bad index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested case the library does not handle (even characteristic where
    /// odd is required, oracle budget exceeded, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal consistency check failed; indicates a bug rather than bad input.
    #[error("structural error: {0}")]
    Structural(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
