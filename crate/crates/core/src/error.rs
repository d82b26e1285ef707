use thiserror::Error;

/// Errors surfaced by the toolkit. Axiom *reports* are not errors; a
/// failed axiom shows up as a failing line in a [`crate::report::Report`].
/// Errors are reserved for malformed inputs, shape violations, and
/// situations where a construction cannot be carried out at all.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("shape mismatch at degree {degree}: {detail}")]
    ShapeMismatch { degree: i64, detail: String },

    #[error("{context}: not a chain map ({detail})")]
    NotChainMap { context: String, detail: String },

    /// The Neumann series did not terminate, so invertibility of the
    /// relevant degree-zero endomorphism could not be certified.
    #[error("series did not terminate within {iterations} iterations; invertibility not established")]
    NonNilpotent { iterations: usize },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("{context} violates its contract: {detail}")]
    ContractViolation { context: String, detail: String },

    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),

    #[error("invalid input: {0}")]
    BadInput(String),
}

impl CoreError {
    pub fn is_non_nilpotent(&self) -> bool {
        matches!(self, CoreError::NonNilpotent { .. })
    }
}
