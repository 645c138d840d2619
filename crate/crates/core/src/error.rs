use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("signature mismatch")]
    Signature,
    #[error("index {0} out of range")]
    Index(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource guard: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
