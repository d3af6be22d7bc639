use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series contexts differ")]
    ContextMismatch,
    #[error("invalid series context: {0}")]
    Context(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("exponent {exponent} of {var:?} is below the context floor")]
    ExponentUnderflow { var: String, exponent: i32 },
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("interlacing chain broken at slice index {index}")]
    BrokenChain { index: i32 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("truncation cap too small: {0}")]
    CapTooSmall(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
