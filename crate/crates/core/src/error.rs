use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A query needs coefficients beyond what a table holds.
    #[error("range error: {what} needs {needed}, table limit is {limit}")]
    Range {
        what: String,
        needed: u64,
        limit: u64,
    },

    /// A Lucas term vanished where an exact division needs it to be non-zero.
    #[error("degenerate input: U_{d} = 0 for ({a}, {q})")]
    Degenerate { a: String, q: String, d: u64 },

    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported table version {0:?}")]
    Version(String),

    #[error("checksum mismatch: header says {expected}, body hashes to {actual}")]
    Checksum { expected: String, actual: String },

    #[error("malformed table at line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("table is for {found}, expected {expected}")]
    DescriptorMismatch { expected: String, found: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
