use thiserror::Error;

/// Library-wide error type.
///
/// `Precision` and `Resource` are the "deepen the proxy / raise the budget"
/// class of failures: the computation is well-posed but the certified
/// arithmetic could not separate a value from a decision boundary, or an
/// explicit iteration cap was hit.  Everything else is a caller error.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input (continued-fraction spec, ratio, spec file).
    #[error("parse error: {0}")]
    Parse(String),

    /// Too few data points / samples for the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A certified bound could not separate a computed value from a
    /// decision boundary; re-run with a deeper rational proxy.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// Explicit iteration or memory budget exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end: usage-class
    /// errors exit 2, precision/resource errors exit 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse(_) | Error::InsufficientData(_) => 2,
            Error::Precision(_) | Error::Resource(_) | Error::Io(_) => 3,
        }
    }
}
