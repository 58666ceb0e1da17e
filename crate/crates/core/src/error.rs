use thiserror::Error;

/// Errors surfaced by the library. Every failed invariant names itself.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported flat combination: {0}")]
    UnsupportedFlatPair(String),

    #[error("invalid flat: {0}")]
    InvalidFlat(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertical line has no affine dual point")]
    VerticalDual,

    #[error("construction verification failed: {construction}: {details}")]
    VerificationFailed {
        construction: &'static str,
        details: String,
    },

    #[error("search budget exhausted in {construction}: {diagnostics}")]
    SearchBudgetExhausted {
        construction: &'static str,
        diagnostics: String,
    },

    #[error("partition parts overlap at index {index}")]
    OverlappingParts { index: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
