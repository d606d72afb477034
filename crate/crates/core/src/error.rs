use thiserror::Error;

use crate::matrix::LinalgError;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation needed internal degrees beyond the configured window.
    #[error("truncation: {stage} needs degree {degree}, beyond the window (raise --dmax above {degree})")]
    Truncation { stage: String, degree: i32 },

    /// Malformed input data (not text).
    #[error("input error: {0}")]
    Input(String),

    /// A text definition could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Relations or an element failed a regularity certificate.
    #[error("not a regular sequence: {0}")]
    NotRegular(String),

    /// A module was required to be totally reflexive but is not.
    #[error("not totally reflexive: {0}")]
    NotTotallyReflexive(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// The requested invariant does not exist for this input.
    #[error("undefined: {0}")]
    Undefined(String),

    /// The invariant exists but no implemented method applies.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn truncation(stage: impl Into<String>, degree: i32) -> Self {
        Error::Truncation {
            stage: stage.into(),
            degree,
        }
    }

    /// Whether the failure stems from user input rather than the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Parse { .. })
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
