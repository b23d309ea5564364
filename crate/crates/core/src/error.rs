use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("pole: denominator factor {0} vanishes under substitution")]
    Pole(String),
    #[error("invariant violated: {what}: {detail}")]
    Invariant { what: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invariant(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invariant { what: what.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
