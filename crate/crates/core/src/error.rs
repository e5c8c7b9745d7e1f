//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("enumeration budget exceeded: need {required} items, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("input vector must be nonincreasing (entry {index} rises from {prev} to {next})")]
    NonDecreasingInput { index: usize, prev: f64, next: f64 },

    #[error("series diverges for parameters p={p}, q={q} (requires p > 1, q < ∞)")]
    DivergentParameters { p: f64, q: f64 },

    #[error("injection map must cover the {entries} stored entries, has only {sigma_len}")]
    InjectionTooShort { entries: usize, sigma_len: usize },

    #[error("index out of range: {what} = {got}, valid range is {min}..={max}")]
    IndexOutOfRange {
        what: &'static str,
        got: usize,
        min: usize,
        max: usize,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("report schema mismatch: expected {expected:?}, got {got:?}")]
    SchemaMismatch { expected: String, got: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
