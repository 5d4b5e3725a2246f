use thiserror::Error;

/// Errors raised while building ordered structures or computing fixpoints.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element not found: {0}")]
    ElementNotFound(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("{what} has {size} elements, cap is {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },

    #[error("operator is not monotone: {0}")]
    NotMonotone(String),

    #[error("invalid refinement: {0}")]
    InvalidRefinement(String),

    #[error("approximant is not reliable: {0}")]
    NotReliable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("unsupported formula: {0}")]
    UnsupportedFormula(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
