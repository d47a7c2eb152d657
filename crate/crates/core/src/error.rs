use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid interval {0}")]
    InvalidInterval(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("interval does not isolate a single root: {0}")]
    NotIsolating(String),
    #[error("ideal is positive-dimensional (dimension {0})")]
    PositiveDimensional(i64),
    #[error("slicing did not reach dimension zero after {0} attempts")]
    SlicingFailed(usize),
    #[error("refinement budget exhausted after {0} bisections")]
    RefinementExhausted(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("genericity assumptions are not satisfied: {0}")]
    Genericity(String),
    #[error("no zero-dimensional Lagrange system after {retries} draws at level n = {level}")]
    RetryExhausted { level: usize, retries: usize },
    #[error("modular reconstruction did not verify after {0} primes")]
    Reconstruction(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
