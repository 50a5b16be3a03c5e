use thiserror::Error;

/// Errors raised by the thermodynamic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Vectors or spectra whose sizes do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A population vector that is not a probability distribution.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// Input that could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A cycle that exchanges no work, so its figure of merit is undefined.
    #[error("degenerate cycle: {0}")]
    DegenerateCycle(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}
