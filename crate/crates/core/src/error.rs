use thiserror::Error;

/// Errors raised by state validation, tensor shape checks and criterion evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not Hermitian: max |A - A†| = {deviation:e} exceeds tolerance {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("trace is {trace} (|tr - 1| exceeds tolerance {tol:e})")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("not positive semidefinite: min eigenvalue {min_eigenvalue:e} below floor {floor:e}")]
    NotPositive { min_eigenvalue: f64, floor: f64 },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("party index {party} out of range for {parties} subsystems")]
    BadParty { party: usize, parties: usize },

    #[error("state has {0} parties, expected exactly 2")]
    NotBipartite(usize),

    #[error("local dimension {0} invalid, need d >= 2")]
    BadDimension(usize),

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("mode {mode} out of range for a tensor of order {order}")]
    BadMode { mode: usize, order: usize },

    #[error("vector norm is {norm}, expected 1 within {tol:e}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state file: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
