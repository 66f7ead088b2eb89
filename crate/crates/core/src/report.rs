//! Solution and per-run metrics shared by every solver.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::oracle::ElementId;
use crate::parallel::SolverParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    Exact,
    /// The bucketed parallel solver on the raw instance.
    Par,
    /// Cost preprocessing followed by the bucketed parallel solver.
    Main,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Exact => "exact",
            Algorithm::Par => "par",
            Algorithm::Main => "main",
        }
    }

    pub fn uses_epsilon(self) -> bool {
        matches!(self, Algorithm::Par | Algorithm::Main)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "exact" => Ok(Algorithm::Exact),
            "par" => Ok(Algorithm::Par),
            "main" => Ok(Algorithm::Main),
            other => Err(format!("unknown algorithm `{other}` (expected greedy, exact, par or main)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Sorted ascending.
    pub chosen: Vec<ElementId>,
    pub total_cost: f64,
    /// `g(chosen)` on the instance the solution was produced for.
    pub achieved: u64,
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One near-independence check: is `g_B(J) >= (1-ε)² Σ_{v∈J} g_B(v)`?
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NisRecord {
    pub t: u64,
    pub t_prime: u64,
    pub size: usize,
    pub joint_gain: u64,
    pub summed_gain: u64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NisAudit {
    pub records: Vec<NisRecord>,
}

impl NisAudit {
    pub fn push(&mut self, record: NisRecord) {
        self.records.push(record);
    }

    pub fn calls(&self) -> usize {
        self.records.len()
    }

    pub fn satisfied(&self) -> usize {
        self.records.iter().filter(|r| r.satisfied).count()
    }
}

/// Where the adaptive rounds of a run went. The fields sum to the ledger's
/// round count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundBreakdown {
    pub preprocess: u64,
    pub params: u64,
    pub bucket_scans: u64,
    pub nis_iterations: u64,
    pub fallback: u64,
    pub greedy: u64,
}

impl RoundBreakdown {
    pub fn total(&self) -> u64 {
        self.preprocess + self.params + self.bucket_scans + self.nis_iterations + self.fallback + self.greedy
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    pub epsilon: Option<f64>,
    pub rounds: u64,
    pub queries: u64,
    pub wall_ms: f64,
    pub cost: f64,
    pub achieved: u64,
    /// `Δ = max_v f(v)` on the original, untruncated oracle.
    pub delta_max_singleton: Option<u64>,
    pub ratio_vs_exact: Option<f64>,
    pub nis_audit: NisAudit,
    pub fallback_used: bool,
    pub m_prime_capped: bool,
    /// Parameters of the instance the bucketed solver actually ran on.
    pub params: Option<SolverParams>,
    pub breakdown: RoundBreakdown,
    /// `|A_{p+1}| / |A_p|` for each near-independent-set iteration.
    pub shrinkage: Vec<f64>,
}

impl RunReport {
    pub fn new(algorithm: Algorithm, seed: Option<u64>, epsilon: Option<f64>) -> Self {
        Self {
            algorithm,
            seed,
            epsilon,
            rounds: 0,
            queries: 0,
            wall_ms: 0.0,
            cost: 0.0,
            achieved: 0,
            delta_max_singleton: None,
            ratio_vs_exact: None,
            nis_audit: NisAudit::default(),
            fallback_used: false,
            m_prime_capped: false,
            params: None,
            breakdown: RoundBreakdown::default(),
            shrinkage: Vec::new(),
        }
    }

    /// The worst-case round budget `2 + 2 + T·ℓ·(r + 2)` for the parameters
    /// this run used.
    pub fn round_budget(&self) -> Option<u64> {
        self.params.as_ref().map(|p| 4 + p.outer * p.inner * (p.nis_rounds + 2))
    }
}

/// `H(n) = 1 + 1/2 + … + 1/n`, with `H(0) = 0`.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [Algorithm::Greedy, Algorithm::Exact, Algorithm::Par, Algorithm::Main] {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{a}\""));
        }
        assert!("lazy".parse::<Algorithm>().is_err());
    }
}
