//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by constructors, evaluators and numeric routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine failed to converge within its iteration cap.
    #[error("numeric non-convergence: {0}")]
    Convergence(String),

    /// A construction exceeded a representable size (e.g. too many Blaschke
    /// zeros to enumerate).
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A point fell outside the region covered by a truncated construction.
    #[error("coverage error: {0}")]
    Coverage(String),

    /// A textual spec (catalog name, symbol JSON, CSV row) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
