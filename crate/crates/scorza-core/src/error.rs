use thiserror::Error;

/// Errors surfaced by the public operations.
///
/// `Indeterminate` is reserved for rational maps evaluated outside their
/// domain of definition (degenerate flop inputs, sub-generic pencils, and
/// so on); everything else is a malformed or incompatible input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("algebra tag mismatch: {0}")]
    TagMismatch(String),
    #[error("invalid modulus {0}: expected an odd prime")]
    BadModulus(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
