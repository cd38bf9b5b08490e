//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library.
///
/// Dimension and arity problems are reported eagerly; nothing is ever
/// silently broadcast or truncated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    ZeroDimension { rows: usize, cols: usize },

    #[error("entry count {len} does not match {rows}x{cols} = {expected}")]
    EntryCountMismatch {
        rows: usize,
        cols: usize,
        len: usize,
        expected: usize,
    },

    #[error("non-finite entry at index {index}")]
    NonFiniteEntry { index: usize },

    #[error("{op}: dimension mismatch between {left_rows}x{left_cols} and {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected a column vector, got {rows}x{cols}")]
    NotColumn { rows: usize, cols: usize },

    #[error("expected dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("matrix is not unitary: max deviation from identity = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("expected a {expected}-qubit value, got {actual} qubits")]
    WrongArity { expected: usize, actual: usize },

    #[error("{n_qubits} qubits exceed the supported register width")]
    TooManyQubits { n_qubits: usize },

    #[error("probe set is empty")]
    EmptyProbeSet,

    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("measurement branch has probability {probability:e}, at or below tolerance")]
    ZeroProbabilityBranch { probability: f64 },

    #[error("tolerance must be a finite positive number, got {eps}")]
    InvalidTolerance { eps: f64 },

    #[error("binary digit must be 0 or 1, got {value}")]
    InvalidBit { value: u8 },

    #[error("function table promised {promised} but classifies as {actual}")]
    PromiseViolated { promised: String, actual: String },

    #[error("all-zero register probability {probability} is bounded away from both 0 and 1")]
    IndeterminateOutcome { probability: f64 },

    #[error("machine does not clone the {which} state: residual = {residual:e}")]
    NotACloner { which: &'static str, residual: f64 },

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("parameter {name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    #[error("unknown strategy name: {token:?} (expected C, D, Q, M or E)")]
    UnknownStrategy { token: String },

    #[error("grid must have at least 2 points per axis, got {theta_points}x{phi_points}")]
    InvalidGrid {
        theta_points: usize,
        phi_points: usize,
    },

    #[error("strategy list is empty")]
    EmptyStrategyList,
}

impl Error {
    /// Short stable identifier for the error kind, used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDimension { .. } => "ZeroDimension",
            Error::EntryCountMismatch { .. } => "EntryCountMismatch",
            Error::NonFiniteEntry { .. } => "NonFiniteEntry",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotColumn { .. } => "NotColumn",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::WrongArity { .. } => "WrongArity",
            Error::TooManyQubits { .. } => "TooManyQubits",
            Error::EmptyProbeSet => "EmptyProbeSet",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ZeroProbabilityBranch { .. } => "ZeroProbabilityBranch",
            Error::InvalidTolerance { .. } => "InvalidTolerance",
            Error::InvalidBit { .. } => "InvalidBit",
            Error::PromiseViolated { .. } => "PromiseViolated",
            Error::IndeterminateOutcome { .. } => "IndeterminateOutcome",
            Error::NotACloner { .. } => "NotACloner",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NonFiniteParameter { .. } => "NonFiniteParameter",
            Error::UnknownStrategy { .. } => "UnknownStrategy",
            Error::InvalidGrid { .. } => "InvalidGrid",
            Error::EmptyStrategyList => "EmptyStrategyList",
        }
    }
}
