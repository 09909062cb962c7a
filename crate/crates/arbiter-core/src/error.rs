use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid currency pair: {0}")]
    InvalidPair(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
