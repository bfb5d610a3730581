use thiserror::Error;

/// Errors surfaced by the kernel.
///
/// `BudgetExceeded` is a resource limit, not a verdict: callers get an
/// explicit refusal instead of a silently truncated search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("subset budget exceeded: {entries} entries, budget {budget}")]
    BudgetExceeded { entries: usize, budget: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("assessment is incoherent; extension is undefined")]
    IncoherentAssessment,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
