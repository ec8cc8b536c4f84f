use thiserror::Error;

use crate::matrix::Dims;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions {rows}x{cols}: rows and columns must be at least 1 and columns at most {max_cols}", max_cols = crate::matrix::MAX_COLS)]
    InvalidDims { rows: usize, cols: usize },

    #[error("matrix is {found_rows}x{found_cols}, expected {expected}")]
    DimensionMismatch {
        expected: Dims,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("matrix entry {value} at ({row}, {col}) is not 0 or 1")]
    InvalidEntry { row: usize, col: usize, value: u8 },

    #[error("row code {value} is out of range for {cols} columns (max {max})", max = (1u128 << *cols) - 1)]
    RowOutOfRange { value: u64, cols: usize },

    #[error("matrix code has {found} rows, expected {expected}")]
    CodeLength { expected: usize, found: usize },

    #[error("rows*cols = {product} exceeds the feasibility bound {bound}")]
    Infeasible { product: usize, bound: usize },

    #[error("feasibility bound {bound} exceeds the hard limit {limit}")]
    BoundTooLarge { bound: usize, limit: usize },

    #[error("flat index {index} out of range for a board of {total} cells")]
    IndexOutOfRange { index: u64, total: u64 },

    #[error("could not allocate a board of {bits} bits")]
    Allocation { bits: u64 },

    #[error("universe of {cardinality} elements exceeds the board budget of {budget} bits")]
    BoardBudget { cardinality: u64, budget: u64 },

    #[error("generator index {index} out of range (universe has {count} generators)")]
    InvalidGenerator { index: usize, count: usize },

    #[error("rows*cols = {product} exceeds the {method} limit {bound}")]
    OracleBound {
        method: &'static str,
        product: usize,
        bound: usize,
    },

    #[error("prime limit must be at least 2, got {0}")]
    LimitTooSmall(u64),

    #[error("record sink failed: {0}")]
    Sink(#[source] Box<dyn std::error::Error + Send + Sync>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
