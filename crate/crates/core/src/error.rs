use thiserror::Error;

use crate::oracle::ElementId;

/// Problems with an instance document or a coverage query.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("nonpositive cost {cost} for element {id}")]
    NonPositiveCost { id: ElementId, cost: f64 },
    #[error("infeasible demand: k = {k} exceeds f(V) = {total}")]
    InfeasibleDemand { k: u64, total: u64 },
    #[error("element id {id} out of range for ground set of size {m}")]
    OutOfRange { id: ElementId, m: usize },
    #[error("invalid generator config: {0}")]
    Generator(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ledger misuse: {0}")]
    LedgerMisuse(&'static str),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("infeasible demand: k = {k} exceeds f(V) = {total}")]
    InfeasibleDemand { k: u64, total: u64 },
    #[error("config error: {0}")]
    Config(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl Error {
    /// True for either flavor of `k > f(V)`.
    pub fn is_infeasible_demand(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleDemand { .. } | Error::Instance(InstanceError::InfeasibleDemand { .. })
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
