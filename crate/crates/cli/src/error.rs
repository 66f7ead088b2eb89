use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] minsmc_core::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// 2 for infeasible demand, 3 for bad configuration or input, 4 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Read { .. } | HarnessError::Write { .. } | HarnessError::Csv(_) => 4,
            HarnessError::Parse { .. } | HarnessError::Config(_) => 3,
            HarnessError::Solver(e) if e.is_infeasible_demand() => 2,
            HarnessError::Solver(minsmc_core::Error::Config(_) | minsmc_core::Error::Instance(_)) => 3,
            HarnessError::Solver(_) => 1,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
