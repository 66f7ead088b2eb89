//! Cost preprocessing: take every very cheap element outright, drop every
//! element too expensive to appear in a good solution, and run the bucketed
//! solver on what is left, where the cost spread is bounded.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::minsmc::{run_par, ParOptions};
use super::params::check_epsilon;
use crate::error::{Error, Result};
use crate::ledger::QueryLedger;
use crate::oracle::{Contracted, ElementId, SetFunction};
use crate::problem::Problem;
use crate::report::{Algorithm, RunReport, Solution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessResult {
    /// 1-based position of the pivot in cost order: the shortest feasible
    /// prefix has this many elements.
    pub pivot_index: usize,
    pub pivot_cost: f64,
    /// Elements cheaper than `ε/(m·k)` times the pivot cost; always taken.
    pub v0: Vec<ElementId>,
    /// Elements costing more than `pivot_index` times the pivot cost.
    pub v1: Vec<ElementId>,
    pub vmod: Vec<ElementId>,
    pub k_mod: u64,
    pub g_v0: u64,
}

/// Splits the ground set by cost.
///
/// One adaptive round: the values of every cost-ordered prefix. The cheap
/// set is itself a prefix in that order, so its value comes from the same
/// round.
pub fn preprocess<G: SetFunction>(
    problem: &Problem<'_, G>,
    epsilon: f64,
    ledger: &mut QueryLedger,
) -> Result<PreprocessResult> {
    check_epsilon(epsilon)?;
    let k = problem.k();
    if k == 0 {
        return Err(Error::Contract("preprocessing needs a positive demand".into()));
    }
    let g = problem.oracle();
    let mut order = problem.ground().to_vec();
    order.sort_by(|&a, &b| problem.cost(a).total_cmp(&problem.cost(b)).then(a.cmp(&b)));

    let prefix = ledger.round(|counter| {
        let mut state = g.empty_state();
        let mut values = Vec::with_capacity(order.len() + 1);
        values.push(g.value(&state));
        for &v in &order {
            g.insert(&mut state, v);
            values.push(g.value(&state));
        }
        counter.add(values.len() as u64);
        values
    })?;
    let j = (1..prefix.len())
        .find(|&i| prefix[i] >= k)
        .ok_or(Error::InfeasibleDemand { k, total: *prefix.last().unwrap_or(&0) })?;
    let pivot_cost = problem.cost(order[j - 1]);

    let low = epsilon / (problem.m() as f64 * k as f64) * pivot_cost;
    let high = j as f64 * pivot_cost;
    let cheap = order.iter().take_while(|&&v| problem.cost(v) < low).count();
    let g_v0 = prefix[cheap];
    let mut v0 = order[..cheap].to_vec();
    let mut v1: Vec<_> = order.iter().copied().filter(|&v| problem.cost(v) > high).collect();
    let mut vmod: Vec<_> = order[cheap..].iter().copied().filter(|&v| problem.cost(v) <= high).collect();
    v0.sort_unstable();
    v1.sort_unstable();
    vmod.sort_unstable();
    Ok(PreprocessResult { pivot_index: j, pivot_cost, v0, v1, vmod, k_mod: k.saturating_sub(g_v0), g_v0 })
}

/// Preprocessing followed by the bucketed solver on the moderate-cost
/// elements, with the oracle contracted by the cheap set and the demand
/// reduced accordingly. Returns the union of the cheap set and that
/// solution.
pub fn minsmc_main<G: SetFunction>(
    problem: &Problem<'_, G>,
    opts: &ParOptions,
    ledger: &mut QueryLedger,
) -> Result<(Solution, RunReport)> {
    let start = Instant::now();
    let before = ledger.snapshot();
    let mut report = RunReport::new(Algorithm::Main, Some(opts.seed), Some(opts.epsilon));
    check_epsilon(opts.epsilon)?;

    let (mut chosen, achieved) = if problem.k() == 0 {
        (Vec::new(), 0)
    } else {
        let pre = preprocess(problem, opts.epsilon, ledger)?;
        report.breakdown.preprocess += 1;
        if pre.k_mod == 0 {
            (pre.v0, problem.k())
        } else {
            let g = problem.oracle();
            let contracted = Contracted::new(g, g.state_of(&pre.v0), pre.g_v0);
            // the shortest feasible prefix lies inside V0 ∪ Vmod, so the
            // moderate set meets the reduced demand
            let sub = Problem::derived(contracted, problem.costs(), pre.vmod, pre.k_mod);
            let cover = run_par(&sub, opts, ledger, &mut report)?;
            let mut chosen = pre.v0;
            chosen.extend(cover.members);
            (chosen, pre.g_v0 + cover.value)
        }
    };
    chosen.sort_unstable();
    let solution = Solution {
        total_cost: problem.set_cost(&chosen),
        chosen,
        achieved,
        algorithm: Algorithm::Main,
        seed: Some(opts.seed),
    };
    let after = ledger.snapshot();
    report.rounds = after.rounds - before.rounds;
    report.queries = after.queries - before.queries;
    report.cost = solution.total_cost;
    report.achieved = solution.achieved;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((solution, report))
}
