//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the routine.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid call (bad grid, mismatched shapes, unknown keys).
    #[error("usage error: {0}")]
    Usage(String),
    /// Exponents outside the regime where a theorem guarantees anything.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// The requested accuracy cannot be delivered in double precision.
    #[error("precision error: {0}")]
    Precision(String),
    /// A supplied decay or payload certificate fails on the samples.
    #[error("certificate error: {0}")]
    Certificate(String),
    /// Malformed configuration, descriptor or input file.
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
