use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter index must be at least 1, got {0}")]
    InvalidLetter(i64),
    #[error("derivation is undefined on words containing d1^-1")]
    DeriveOfInverse,
    #[error("no substitution given for letter index {0}")]
    MissingSubstitution(u32),
    #[error("empty word is not allowed here")]
    EmptyWord,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not of Hessenberg shape: {0}")]
    NotHessenberg(String),
    #[error("matrix must be square with at least one row")]
    NotSquare,
    #[error("minor is singular, quasideterminant undefined")]
    SingularMinor,
    #[error("series must have zero constant term")]
    NonZeroConstantTerm,
    #[error("linear coefficient is not invertible")]
    NonInvertibleLinearTerm,
    #[error("character requires a unit linear coefficient, got {0}")]
    NonUnitLinearTerm(String),
    #[error("q-quotient is not a polynomial: {0}")]
    NonPolynomialQuotient(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("requested order {requested} exceeds available truncation {available}")]
    TruncationExceeded { requested: usize, available: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
