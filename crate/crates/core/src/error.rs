use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability at row {row}, column {col} is not finite ({value})")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("probability at row {row}, column {col} is negative ({value})")]
    Negative { row: usize, col: usize, value: f64 },

    #[error("probability at position {index} exceeds 1 ({value})")]
    AboveOne { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("score {value} is not finite")]
    NonFiniteScore { value: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(&'static str),

    #[error("n_samples must be at least 1")]
    EmptySimulation,

    #[error("invariant violated: {what} (residual {residual:e})")]
    InvariantViolation { what: &'static str, residual: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
