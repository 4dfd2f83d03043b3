//! Error type shared across the crate.

/// Errors produced by the library.
///
/// `Domain` means the inputs violate a precondition (bad range, wrong
/// spectral index, non-coprime bottom row). `Precision` means the inputs
/// were fine but the requested accuracy could not be certified at the
/// working precision / truncation limit; callers may escalate and retry.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision error: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }
}
