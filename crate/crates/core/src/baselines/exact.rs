use crate::error::{Error, Result};
use crate::oracle::{ElementId, SetFunction};
use crate::problem::Problem;
use crate::report::{Algorithm, Solution};

pub const DEFAULT_SUBSET_LIMIT: usize = 24;

/// Minimum-cost feasible subset by exhaustive search, with ties broken
/// towards the lexicographically smallest id list. Depth-first over ids in
/// increasing order; a branch is cut once its cost exceeds the incumbent or
/// once it is feasible (supersets only cost more). Queries are not charged to
/// any ledger.
pub fn exact_solve<G: SetFunction>(problem: &Problem<'_, G>, subset_limit: usize) -> Result<Solution> {
    let m = problem.m();
    if m > subset_limit {
        return Err(Error::Refused(format!(
            "exact search over {m} elements exceeds the limit of {subset_limit}"
        )));
    }
    let g = problem.oracle();
    let mut search = Search {
        problem,
        best: None,
        path: Vec::with_capacity(m),
        // cheapest cost among ground[i..]
        suffix_min: {
            let mut v = vec![f64::INFINITY; m + 1];
            for i in (0..m).rev() {
                v[i] = v[i + 1].min(problem.cost(problem.ground()[i]));
            }
            v
        },
    };
    search.visit(0, &g.empty_state(), 0.0);
    let (total_cost, chosen, achieved) = search.best.ok_or(Error::InfeasibleDemand {
        k: problem.k(),
        total: problem.total(),
    })?;
    Ok(Solution { chosen, total_cost, achieved, algorithm: Algorithm::Exact, seed: None })
}

struct Search<'p, 'a, G> {
    problem: &'p Problem<'a, G>,
    best: Option<(f64, Vec<ElementId>, u64)>,
    path: Vec<ElementId>,
    suffix_min: Vec<f64>,
}

impl<G: SetFunction> Search<'_, '_, G> {
    fn visit(&mut self, next: usize, state: &G::State, cost: f64) {
        let g = self.problem.oracle();
        let value = g.value(state);
        if value >= self.problem.k() {
            let better = match &self.best {
                None => true,
                Some((c, ids, _)) => cost < *c || (cost == *c && self.path < *ids),
            };
            if better {
                self.best = Some((cost, self.path.clone(), value));
            }
            return;
        }
        let ground = self.problem.ground();
        if next == ground.len() {
            return;
        }
        if let Some((best, _, _)) = &self.best {
            if cost + self.suffix_min[next] > *best {
                return;
            }
        }
        for (i, &v) in ground.iter().enumerate().skip(next) {
            let mut child = state.clone();
            g.insert(&mut child, v);
            self.path.push(v);
            self.visit(i + 1, &child, cost + self.problem.cost(v));
            self.path.pop();
        }
    }
}
