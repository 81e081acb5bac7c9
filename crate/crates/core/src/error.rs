use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("wrong functor shape: {0}")]
    WrongShape(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
