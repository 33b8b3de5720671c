use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("indeterminate mismatch: {left:?} vs {right:?}")]
    IndeterminateMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("zero denominator")]
    ZeroDenominator,

    /// The input satisfies the structural invariants but a quantity the
    /// formulas divide by vanishes (zero formal slope, D <= 0, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),

    #[error("point is not fixed by the action: {0}")]
    NotFixed(String),

    /// Two independent computation routes disagreed.
    #[error("internal cross-check failed: {0}")]
    InternalMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_internal_mismatch(&self) -> bool {
        matches!(self, Error::InternalMismatch(_))
    }
}
