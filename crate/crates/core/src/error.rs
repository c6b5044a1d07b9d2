use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have at least one row and one column")]
    Empty,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("log-matrix entry ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },

    #[error("log-matrix needs at least 3 rows, got {0}")]
    TooFewRows(usize),

    #[error("not stochastic: column 0 sums to {first} but column {col} sums to {sum}")]
    NotStochastic { first: i64, col: usize, sum: i64 },

    #[error("columns {0} and {1} define the same monomial")]
    DuplicateColumns(usize, usize),

    #[error("degree is zero after reduction")]
    ZeroDegree,

    #[error("degree dropped from {expected} to {actual} after reduction")]
    DegreeDropped { expected: i64, actual: i64 },

    #[error("map is not birational (lattice determinant {0})")]
    NotBirational(i64),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid walk configuration: {0}")]
    InvalidConfig(String),

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("no matrix in input")]
    EmptyInput,

    /// Broken internal invariant. Never caused by valid input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
