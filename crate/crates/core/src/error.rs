use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("oracle scale exceeded: {0}")]
    ScaleExceeded(String),
    #[error("numerical certification failed: {0}")]
    NumericalFailure(String),
    #[error("unbounded search refused: {0}")]
    Unbounded(String),
    #[error("value out of supported range: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
