use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced anywhere in the crate.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// failing computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },

    #[error("`{function}` takes {expected} argument(s) but {found} were given (offset {position})")]
    Arity {
        function: String,
        expected: usize,
        found: usize,
        position: usize,
    },

    #[error("{operation} is undefined at x = {at}")]
    Domain { operation: &'static str, at: f64 },

    #[error("derivative is undefined at x = {at}")]
    DerivativeUndefined { at: f64 },

    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate} after {segments} segments")]
    NonConvergence {
        estimate: f64,
        error_estimate: f64,
        segments: usize,
    },

    #[error("no uniform partition with at most {cap} panels meets tolerance {tol}")]
    PanelCapExceeded { cap: usize, tol: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
