use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("malformed parameter: {0}")]
    Malformed(String),
    #[error("chains do not pair with their Hermitian duals")]
    NotHermitian,
    #[error("pole: denominator vanishes at pairing {0}")]
    Pole(String),
    #[error("script error: {0}")]
    Script(String),
    #[error("string pairs are not a strict core")]
    NotStrictCore,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
