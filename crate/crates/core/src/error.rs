use thiserror::Error;

/// Failures that are not mathematical verdicts: malformed input, unbalanced
/// formulas, mismatched structures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error at {location}: {message}")]
    Structural { location: String, message: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("module is not finitely generated projective on the {side} side")]
    NotProjective { side: String },
    #[error("purity failure: {detail}")]
    PurityFailure { detail: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn structural(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Structural { location: location.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
