use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("intersections at infinity are not distinct: {0}")]
    NotDistinct(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bases do not span the same space: {0}")]
    NotSpanning(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
