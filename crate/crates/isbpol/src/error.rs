use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the solvers, parsers and fitters.
#[derive(Debug, Error)]
pub enum Error {
    /// An input value violated a precondition (nonpositive energy,
    /// negative thickness, empty grid, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Device-file syntax or reference error, with the 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A fit was requested with fewer data than free parameters.
    #[error("underdetermined fit: {0}")]
    Underdetermined(String),

    /// The damped normal equations stayed singular up to the damping cap.
    #[error("singular normal equations (rank-deficient jacobian)")]
    SingularNormalEquations,

    /// The model or its jacobian produced NaN/inf.
    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    /// An iterative scheme failed to converge; `history` holds the residual
    /// per iteration for diagnosis.
    #[error("{what} did not converge after {iterations} iterations (last residual {last:e})")]
    NoConvergence {
        what: String,
        iterations: usize,
        last: f64,
        history: Vec<f64>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
