use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("genus {0} is not supported (need genus >= 3)")]
    UnsupportedGenus(usize),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("words are not conjugate: {0} and {1}")]
    ConjugacyMismatch(String, String),
    #[error("generator catalog failed validation: {0}")]
    ValidationFailure(String),
    #[error("invalid generator index {index} for genus {genus}")]
    InvalidIndex { index: usize, genus: usize },
    #[error("determinant {0} is not +1 or -1")]
    DeterminantOutOfRange(String),
    #[error("genus {g} is outside the decomposition range for k = {k}")]
    OutOfRange { g: u64, k: u64 },
    #[error("invalid rotation model: {0}")]
    InvalidSpec(String),
    #[error("rewriting budget of {0} node expansions exhausted")]
    BudgetExceeded(usize),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconclusive: conjugator power bound {0} exhausted")]
    Inconclusive(usize),
}

pub type Result<T> = std::result::Result<T, McgError>;
