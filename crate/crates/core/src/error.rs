use std::path::PathBuf;

use thiserror::Error;

use crate::basis::BasisKind;

/// Errors raised by the library and the CLI harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("wrong basis kind: expected {expected}, got {actual}")]
    WrongKind { expected: BasisKind, actual: BasisKind },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// Input for which the requested test is meaningless (for example ψ(0) ≤ 0).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed corpus at line {line}: {reason}")]
    Corpus { line: usize, reason: String },

    #[error("malformed verdict file at line {line}: {reason}")]
    Verdicts { line: usize, reason: String },

    #[error("unknown detector `{0}`")]
    UnknownDetector(String),

    #[error("config: {0}")]
    Config(String),

    #[error("index {index} out of range for corpus of {len} functions")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
