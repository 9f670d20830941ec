use thiserror::Error;

/// Errors produced by model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("inner dimensions do not agree: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    InnerDimMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry ({row},{col}) = {value} lies outside [0, 1]")]
    NotFuzzy { row: usize, col: usize, value: f64 },

    #[error("alpha = {0} is outside the admissible range")]
    AlphaOutOfRange(f64),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sample standard deviation needs at least two rows")]
    SingleRowSample,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("no recurrence within {max_steps} steps")]
    NonTermination { max_steps: usize },

    #[error("all row sums are equal; membership grades are undefined")]
    DegenerateRange,

    #[error("row {row} is infeasible: target {value} exceeds reachable bound {bound}")]
    InfeasibleFit { row: usize, value: f64, bound: f64 },

    #[error("partitions overlap at index {0}")]
    OverlappingPartitions(usize),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
