use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument is structurally invalid (empty grid, bad distribution, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Two bit-level objects do not have compatible lengths.
    #[error("dimension mismatch in {what}: expected {expected}, got {actual}")]
    Dimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    /// Adaptive quadrature ran out of subdivisions before reaching tolerance.
    #[error("quadrature did not converge on [{lo}, {hi}] (error estimate {estimate:e})")]
    Quadrature { lo: f64, hi: f64, estimate: f64 },
    /// The error-correcting decoder could not produce a message.
    #[error("decode failure: {0}")]
    DecodeFailure(String),
    /// A text encoding (hex or binary) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
