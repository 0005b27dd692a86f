use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    Shape { row: usize, len: usize, expected: usize },

    #[error("entry ({row}, {col}) = {value:e} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("row {row} sums to {sum}, expected 1")]
    RowSum { row: usize, sum: f64 },

    #[error("column {col} sums to {sum}, expected 1")]
    ColumnSum { col: usize, sum: f64 },

    #[error("entry {index} = {value} is not a finite number")]
    NonFinite { index: usize, value: f64 },

    #[error("probability vector sums to {sum}, expected 1")]
    VectorSum { sum: f64 },

    #[error("vector entry {index} = {value:e} is negative")]
    NegativeVectorEntry { index: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("operation requires dimension {expected}, got {found}")]
    Dim { expected: usize, found: usize },

    #[error("{name} = {value} is out of range {range}")]
    Range { name: &'static str, value: f64, range: &'static str },

    #[error("{what} did not converge within {iterations} iterations (residual {residual:e})")]
    Convergence { what: &'static str, iterations: usize, residual: f64 },

    #[error("matrix is numerically singular")]
    SingularInput,

    #[error("phase equation denominator vanished (|den| = {modulus:e})")]
    DegenerateDenominator { modulus: f64 },

    #[error("curvature formula is singular at the cusp angle theta = {theta}")]
    CuspSingularity { theta: f64 },

    #[error("cross-section anchors do not span a plane")]
    CollinearAnchors,

    #[error("invalid plane: {0}")]
    InvalidPlane(String),

    #[error("grid step {step} does not divide 1")]
    InvalidStep { step: f64 },

    #[error("grid would contain {count} points, above the cap of {cap}")]
    StepTooSmall { count: u128, cap: u128 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
