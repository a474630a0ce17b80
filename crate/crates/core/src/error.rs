//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A distance matrix is not square, or labels do not match its size.
    #[error("structural error: {0}")]
    Structural(String),

    /// A map sent a domain point outside the declared domain.
    #[error("domain violation: {map} maps {point} to {image}, outside the domain")]
    DomainViolation {
        map: String,
        point: String,
        image: String,
    },

    /// The domain cannot produce two distinct points.
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    /// An argument is outside its stated range (for example `k >= 1`).
    #[error("parameter error: {0}")]
    Param(String),

    /// An operation precondition failed (for example phi-minimization on a
    /// non-compact space).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Config or expression text failed to parse.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A gallery id that does not exist.
    #[error("unknown gallery entry: {0}")]
    UnknownGalleryEntry(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
