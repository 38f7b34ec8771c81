use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants are grouped by how a caller should react: a precondition was
/// violated, a resource cap or budget was hit, or input could not be read.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("timeout after {nodes} nodes; best lower bound {best} is not certified")]
    Timeout { nodes: u64, best: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn cap(msg: impl Into<String>) -> Self {
        Error::Cap(msg.into())
    }

    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Cap(_) => "cap",
            Error::Timeout { .. } => "timeout",
            Error::Io(_) => "io",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Internal(_) => 1,
            Error::Cap(_) | Error::Timeout { .. } => 2,
            Error::Io(_) | Error::Parse(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
