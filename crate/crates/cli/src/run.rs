use std::time::Instant;

use minsmc_core::{
    exact_solve, greedy_solve, harmonic, minsmc_main, minsmc_par, Algorithm, CoverageInstance, ParOptions, Problem,
    QueryLedger, RunReport, SamplingMode, Solution,
};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSpec {
    pub algorithm: Algorithm,
    /// Required for `par` and `main`, ignored otherwise.
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub exact_limit: usize,
    pub sampling: SamplingMode,
}

/// The guarantee each algorithm is held to, as a multiple of OPT:
/// `H(min(Δ, k))/(1 - 5ε)` for the parallel solvers, `H(min(Δ, k))` for
/// greedy, 1 for exhaustive search.
pub fn ratio_bound(algorithm: Algorithm, delta: u64, k: u64, epsilon: Option<f64>) -> f64 {
    let h = harmonic(delta.min(k));
    match algorithm {
        Algorithm::Exact => 1.0,
        Algorithm::Greedy => h,
        Algorithm::Par | Algorithm::Main => h / (1.0 - 5.0 * epsilon.unwrap_or(0.0)),
    }
}

/// Runs one algorithm on an instance and fills in the instance-level report
/// fields (`Δ`).
pub fn run_algorithm(inst: &CoverageInstance, spec: &RunSpec) -> Result<(Solution, RunReport)> {
    let problem = Problem::from_instance(inst)?;
    let mut ledger = QueryLedger::new();
    let start = Instant::now();
    let (solution, mut report) = match spec.algorithm {
        Algorithm::Greedy => {
            let sol = greedy_solve(&problem, &mut ledger)?;
            let mut report = RunReport::new(Algorithm::Greedy, None, None);
            report.breakdown.greedy = ledger.rounds();
            (sol, report)
        }
        Algorithm::Exact => (exact_solve(&problem, spec.exact_limit)?, RunReport::new(Algorithm::Exact, None, None)),
        Algorithm::Par | Algorithm::Main => {
            let epsilon = spec
                .epsilon
                .ok_or_else(|| HarnessError::Config(format!("{} needs an epsilon", spec.algorithm)))?;
            let opts = ParOptions { epsilon, seed: spec.seed, sampling: spec.sampling };
            if spec.algorithm == Algorithm::Par {
                minsmc_par(&problem, &opts, &mut ledger)?
            } else {
                minsmc_main(&problem, &opts, &mut ledger)?
            }
        }
    };
    report.rounds = ledger.rounds();
    report.queries = ledger.queries();
    report.cost = solution.total_cost;
    report.achieved = solution.achieved;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report.delta_max_singleton = Some(inst.max_singleton());
    Ok((solution, report))
}
