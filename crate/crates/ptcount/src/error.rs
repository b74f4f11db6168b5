use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] ptcount_core::Error),
    #[error("p·q = {n} exceeds the oracle guard {limit}; raise --max-oracle-n or use --method backtrack")]
    OracleGuard { n: usize, limit: usize },
    #[error("p = {p} exceeds the backtrack guard {limit}; raise --max-backtrack-p")]
    BacktrackGuard { p: usize, limit: usize },
    #[error("{0}")]
    Usage(String),
    #[error("cache line {line}: {reason}")]
    Cache { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl AppError {
    /// Process exit status: everything here is a usage-level failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T, E = AppError> = std::result::Result<T, E>;
