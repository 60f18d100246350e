use mpacm_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid factor dimensions {0:?}")]
    InvalidShape(Vec<usize>),
    #[error("configuration has no points")]
    Empty,
    #[error("point {point} has {got} factors, expected {expected}")]
    WrongFactorCount {
        point: usize,
        expected: usize,
        got: usize,
    },
    #[error("point {point}, factor {factor}: {got} coordinates, expected {expected}")]
    CoordinateLength {
        point: usize,
        factor: usize,
        expected: usize,
        got: usize,
    },
    #[error("point {point}, factor {factor}: all coordinates vanish")]
    ZeroPoint { point: usize, factor: usize },
    #[error("point {point} duplicates point {first}")]
    DuplicatePoint { point: usize, first: usize },
    #[error("factor index {factor} out of range for {factors} factors")]
    FactorOutOfRange { factor: usize, factors: usize },
    #[error("operation needs {needed} factors, configuration has {got}")]
    NeedsFactors { needed: usize, got: usize },
    #[error("expected shape {expected}, got {got}")]
    WrongShape { expected: String, got: String },
    #[error("configuration does not have the star property")]
    NotStar,
    #[error("level images are not nested")]
    ChainNotNested,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("generator gave up after {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
