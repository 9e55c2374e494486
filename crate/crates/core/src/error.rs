use thiserror::Error;

#[derive(Debug, Error)]
pub enum CohomError {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational {0:?}, expected p/q or p")]
    ParseRational(String),

    #[error("malformed multi-index {0:?}, expected [a1,...,an]")]
    ParseMultiIndex(String),

    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("-2*lambda_{index} = {value} is not a natural number")]
    NotNatural { index: usize, value: String },

    #[error("t1 = {given} does not match -2*lambda_1 = {actual}")]
    SplitMismatch { given: u64, actual: u64 },

    #[error("delta = {0} is not a natural number")]
    DeltaNotNatural(String),

    #[error("alpha_max must be at least 1")]
    TruncationTooSmall,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CohomError>;
