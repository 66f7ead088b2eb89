use minsmc_core::{CoverageInstance, Solution};
use serde::Serialize;

/// Absolute tolerance for the recomputed cost.
pub const COST_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Recomputes `g(chosen)` and `c(chosen)` from the instance and compares
/// them with the stored fields. Never panics; every problem becomes a
/// failed check.
pub fn verify_solution(inst: &CoverageInstance, sol: &Solution) -> VerifyReport {
    let mut checks = Vec::new();
    let m = inst.m();
    let out_of_range: Vec<_> = sol.chosen.iter().filter(|&&v| v >= m).collect();
    let ordered = sol.chosen.windows(2).all(|w| w[0] < w[1]);
    let ids_ok = out_of_range.is_empty() && ordered;
    checks.push(Check {
        name: "ids",
        passed: ids_ok,
        detail: if !out_of_range.is_empty() {
            format!("ids {out_of_range:?} outside 0..{m}")
        } else if !ordered {
            "ids are not strictly increasing".to_string()
        } else {
            format!("{} distinct ids in range", sol.chosen.len())
        },
    });
    if !ids_ok {
        return VerifyReport { checks };
    }

    let k = inst.k();
    let value = inst.coverage_eval(&sol.chosen).expect("ids checked").min(k);
    checks.push(Check {
        name: "achieved",
        passed: value == sol.achieved,
        detail: format!("recomputed g = {value}, stored {}", sol.achieved),
    });
    let cost: f64 = sol.chosen.iter().map(|&v| inst.costs()[v]).sum();
    checks.push(Check {
        name: "cost",
        passed: (cost - sol.total_cost).abs() <= COST_TOLERANCE,
        detail: format!("recomputed cost = {cost}, stored {}", sol.total_cost),
    });
    checks.push(Check { name: "feasible", passed: value >= k, detail: format!("g = {value}, k = {k}") });
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use minsmc_core::Algorithm;

    fn three_sets() -> CoverageInstance {
        CoverageInstance::unit(3, vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]], vec![1.0, 1.0, 2.5], 3).unwrap()
    }

    fn solution(chosen: Vec<usize>, total_cost: f64, achieved: u64) -> Solution {
        Solution { chosen, total_cost, achieved, algorithm: Algorithm::Greedy, seed: None }
    }

    #[test]
    fn valid_solution_passes() {
        let report = verify_solution(&three_sets(), &solution(vec![0, 1], 2.0, 3));
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn removing_an_element_breaks_feasibility() {
        let report = verify_solution(&three_sets(), &solution(vec![0], 1.0, 2));
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        assert_eq!(failed, vec!["feasible"]);
    }

    #[test]
    fn tampered_cost_is_caught() {
        let report = verify_solution(&three_sets(), &solution(vec![0, 1], 1.5, 3));
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        assert_eq!(failed, vec!["cost"]);
        // within tolerance is accepted
        assert!(verify_solution(&three_sets(), &solution(vec![0, 1], 2.0 + 1e-12, 3)).passed());
    }

    #[test]
    fn bad_ids_fail_without_panicking() {
        let report = verify_solution(&three_sets(), &solution(vec![0, 7], 2.0, 3));
        assert!(!report.passed());
        let report = verify_solution(&three_sets(), &solution(vec![1, 0], 2.0, 3));
        assert!(!report.passed());
    }
}
