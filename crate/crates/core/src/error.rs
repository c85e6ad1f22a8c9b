use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: missing table entries, unknown labels, duplicates.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("unknown label `{label}` in {context}")]
    UnknownLabel { label: String, context: String },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("quantale mismatch: {0}")]
    QuantaleMismatch(String),

    /// A brute-force enumeration would exceed the configured cap.
    #[error("enumeration of {what} needs {count} items, cap is {cap}")]
    CapExceeded { what: String, count: u128, cap: u64 },

    #[error("carrier of {size} elements exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    /// The structure does not satisfy its axioms; carries the failed check labels.
    #[error("axiom violation: {0}")]
    Axiom(String),

    /// A precondition of the operation does not hold (e.g. not an L-dcpo).
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("the quantale is not integral; {0} requires u = 1")]
    NonIntegral(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("generation budget exhausted: {0}")]
    Budget(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// True for errors caused by input shape rather than by mathematics.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::Structural(_)
                | Error::UnknownLabel { .. }
                | Error::CarrierMismatch(_)
                | Error::QuantaleMismatch(_)
                | Error::UnknownFixture(_)
                | Error::Format(_)
                | Error::TooLarge { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
