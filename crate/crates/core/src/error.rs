use thiserror::Error;

/// Errors produced by the numerical routines and the state/portrait constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: |H[{row}][{col}] - conj(H[{col}][{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("trace is not 1 (got {0})")]
    TraceNotOne(f64),

    #[error("negative eigenvalue {0}")]
    NegativeEigenvalue(f64),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("logarithm of negative eigenvalue {0}")]
    Domain(f64),

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("exponent spread {0} exceeds the overflow guard")]
    Overflow(f64),

    #[error("unknown inequality target '{0}'")]
    UnknownTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
