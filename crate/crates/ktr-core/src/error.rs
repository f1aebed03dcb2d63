//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally well-formed input violating a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// The requested operation does not apply to this input kind.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Enumeration guard exceeded.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// The instance generator could not satisfy its constraints.
    #[error("generation failed: {0}")]
    Generation(String),

    /// Post-construction verification of the reduction failed; this indicates
    /// a bug in the construction, never bad user input.
    #[error("reduction construction invariant violated: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
