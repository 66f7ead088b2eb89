use std::cmp::Ordering;

use crate::batch::scan_state;
use crate::error::{Error, Result};
use crate::ledger::QueryLedger;
use crate::oracle::{ElementId, SetFunction};
use crate::problem::Problem;
use crate::report::{Algorithm, Solution};

/// Result of running greedy on top of an existing partial solution.
#[derive(Debug, Clone)]
pub(crate) struct GreedyRun<S> {
    pub added: Vec<ElementId>,
    pub state: S,
    pub value: u64,
    pub iterations: u64,
}

/// Sequential cost-effectiveness greedy. Each iteration spends one adaptive
/// round scanning the marginals of every unchosen element and then adds the
/// element with the best `gain / cost` (ties: larger gain, then smaller id).
pub fn greedy_solve<G: SetFunction>(problem: &Problem<'_, G>, ledger: &mut QueryLedger) -> Result<Solution> {
    let g = problem.oracle();
    let run = greedy_extend(problem, &[], g.empty_state(), None, ledger)?;
    let mut chosen = run.added;
    chosen.sort_unstable();
    Ok(Solution {
        total_cost: problem.set_cost(&chosen),
        chosen,
        achieved: run.value,
        algorithm: Algorithm::Greedy,
        seed: None,
    })
}

/// Greedy continuation from `state` (holding `base`). `known_value` is
/// `g(base)` when the caller already paid for it.
pub(crate) fn greedy_extend<G: SetFunction>(
    problem: &Problem<'_, G>,
    base: &[ElementId],
    mut state: G::State,
    known_value: Option<u64>,
    ledger: &mut QueryLedger,
) -> Result<GreedyRun<G::State>> {
    let g = problem.oracle();
    let k = problem.k();
    let mut remaining: Vec<ElementId> =
        problem.ground().iter().copied().filter(|v| !base.contains(v)).collect();
    let mut added = Vec::new();
    let mut iterations = 0;

    // with k = 0 every set is feasible and g(base) = min(f(base), 0) = 0
    if k == 0 || known_value.is_some_and(|v| v >= k) {
        let value = known_value.unwrap_or(0).min(k);
        return Ok(GreedyRun { added, state, value, iterations });
    }
    let mut value;

    loop {
        let scan = ledger.round(|counter| scan_state(g, &state, &remaining, counter))?;
        iterations += 1;
        value = scan.base_value;
        if value >= k {
            break;
        }
        let best = remaining
            .iter()
            .zip(&scan.gains)
            .enumerate()
            .filter(|(_, (_, &gain))| gain > 0)
            .max_by(|(_, (&a, &ga)), (_, (&b, &gb))| {
                let ra = ga as f64 / problem.cost(a);
                let rb = gb as f64 / problem.cost(b);
                ra.partial_cmp(&rb)
                    .unwrap_or(Ordering::Equal)
                    .then(ga.cmp(&gb))
                    .then(b.cmp(&a))
            })
            .map(|(pos, (&v, &gain))| (pos, v, gain));
        let Some((pos, v, gain)) = best else {
            return Err(Error::InfeasibleDemand { k, total: value });
        };
        g.insert(&mut state, v);
        remaining.remove(pos);
        added.push(v);
        value += gain;
        if value >= k {
            break;
        }
    }
    Ok(GreedyRun { added, state, value, iterations })
}
