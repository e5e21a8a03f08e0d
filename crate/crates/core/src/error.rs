use std::io;

use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad parameter or flag combination supplied by the caller.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("matrix is not Hermitian (max |m - m†| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A density matrix failed hermiticity / trace / positivity validation.
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    /// Entry outside the diagonal/anti-diagonal above tolerance (1-based indices).
    #[error("not an X state: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXState {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("no violation region: {0}")]
    NoViolationRegion(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
