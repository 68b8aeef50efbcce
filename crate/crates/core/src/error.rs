use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument or point lies outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid mismatch: operands live on different quadrature grids")]
    GridMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A mapping produced a point outside its declared domain.
    #[error("domain escape at step {step:?}: T(x) left the domain at {point:?}")]
    DomainEscape { step: Option<usize>, point: Vec<f64> },

    #[error("non-finite value at step {step}: {what}")]
    Numeric { step: usize, what: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invariant violated at step {step}: {detail}")]
    Invariant { step: usize, detail: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
