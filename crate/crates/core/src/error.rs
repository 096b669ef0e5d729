use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("vertex index {index} out of range for order {order}")]
    BadIndex { index: usize, order: usize },

    #[error("size guard: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("ordering is not feasible: {0}")]
    NotFeasible(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("non-positive label increment {increment} at position {position}")]
    NegativeStep { position: usize, increment: i64 },

    #[error("vertices {first} and {second} share label {label}")]
    DuplicateLabel {
        first: usize,
        second: usize,
        label: i64,
    },

    #[error("invalid ordering: {0}")]
    BadOrdering(String),

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("construction integrity: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
