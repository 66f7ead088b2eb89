//! Near-independent set selection.
//!
//! Given a pool of elements whose marginals over the current solution `B`
//! sit in a narrow ratio window and a narrow gain window, repeatedly guess
//! the largest sample size `t` for which a random `t`-subset still leaves
//! most of the pool with near-full gains, add such a subset to `B`, and
//! drop pool members that fell out of the windows.
//!
//! Each iteration is a single adaptive round: the estimates for every size
//! guess, the random subset each guess would select, and the marginals of
//! the pool over `B` plus that subset are all determined before any answer
//! comes back. Guesses are scanned lazily in increasing order and only the
//! winning guess's follow-up queries are issued.

use rand::Rng;

use super::bucket::BucketSpec;
use super::mean::{Estimator, Indicator, SamplingMode};
use super::params::SolverParams;
use super::rng::{Purpose, StreamKey};
use crate::batch::scan_state;
use crate::error::{Error, Result};
use crate::ledger::QueryLedger;
use crate::oracle::{ElementId, SetFunction};
use crate::problem::Problem;
use crate::report::{NisAudit, NisRecord};

/// A solution under construction: members, their evaluated state, and `g`.
#[derive(Debug, Clone)]
pub struct PartialCover<S> {
    pub members: Vec<ElementId>,
    pub state: S,
    pub value: u64,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct NisRun {
    pub added: Vec<ElementId>,
    pub iterations: u64,
    pub shrinkage: Vec<f64>,
    pub joint_gain: u64,
    pub summed_gain: u64,
}

impl NisRun {
    pub fn record(&self, epsilon: f64, bucket: &BucketSpec) -> NisRecord {
        let bound = (1.0 - epsilon).powi(2) * self.summed_gain as f64;
        NisRecord {
            t: bucket.t,
            t_prime: bucket.t_prime,
            size: self.added.len(),
            joint_gain: self.joint_gain,
            summed_gain: self.summed_gain,
            satisfied: self.joint_gain as f64 >= bound,
        }
    }
}

/// Guessed sample size for guess `i`: `min(⌊(1+ε̄)^i⌋, a)`, forced to `a` on
/// the last guess.
fn guess_size(params: &SolverParams, i: u64, a: usize) -> usize {
    if i + 1 >= params.guess_count() {
        return a;
    }
    let t = (1.0 + params.eps_bar).powi(i as i32).floor() as usize;
    t.clamp(1, a)
}

/// Runs the selection loop from `cover`, whose marginals over the pool are
/// already known (`pool[i].1`). Extends `cover` in place.
#[allow(clippy::too_many_arguments)]
pub(crate) fn nis_from<G: SetFunction>(
    problem: &Problem<'_, G>,
    params: &SolverParams,
    bucket: BucketSpec,
    pool: &[(ElementId, u64)],
    cover: &mut PartialCover<G::State>,
    key: StreamKey,
    mode: SamplingMode,
    ledger: &mut QueryLedger,
) -> Result<NisRun> {
    let g = problem.oracle();
    let eps = params.epsilon;
    let pass = 1.0 - 1.5 * params.eps_bar;
    let start_value = cover.value;
    let mut run = NisRun::default();

    let mut current: Vec<ElementId> = pool
        .iter()
        .filter(|&&(v, gain)| bucket.contains(gain, problem.cost(v)))
        .map(|&(v, _)| v)
        .collect();
    let initial_gain = |v: ElementId| pool.iter().find(|&&(u, _)| u == v).map_or(0, |&(_, gain)| gain);

    for p in 1..=params.nis_rounds {
        if current.is_empty() || cover.value >= problem.k() {
            break;
        }
        let a = current.len();
        let iter_key = key.child(p);
        let indicator = Indicator {
            g,
            base: &cover.state,
            pool: &current,
            threshold: (1.0 - eps) * bucket.gain_hi,
        };
        let mut estimator = Estimator::new(indicator, params.samples, mode);
        let (selected, scan, rest) = ledger.round(|counter| {
            let mut size = a;
            let mut winner = params.guess_count() - 1;
            for i in 0..params.guess_count() {
                let t = guess_size(params, i, a);
                if estimator.estimate(t, iter_key.child(i), counter) <= pass {
                    size = t;
                    winner = i;
                    break;
                }
            }
            let mut rng = iter_key.child(winner).for_purpose(Purpose::Select).rng();
            let mut order = current.clone();
            for j in 0..size {
                let r = rng.random_range(j..a);
                order.swap(j, r);
            }
            let rest = order.split_off(size);
            let mut state = cover.state.clone();
            for &v in &order {
                g.insert(&mut state, v);
            }
            let scan = scan_state(g, &state, &rest, counter);
            (order, (state, scan), rest)
        })?;
        let (state, scan) = scan;
        run.iterations += 1;

        cover.state = state;
        cover.value = scan.base_value;
        cover.members.extend_from_slice(&selected);
        run.summed_gain += selected.iter().map(|&v| initial_gain(v)).sum::<u64>();
        run.added.extend(selected);

        current = rest
            .iter()
            .zip(&scan.gains)
            .filter(|&(&v, &gain)| bucket.contains(gain, problem.cost(v)))
            .map(|(&v, _)| v)
            .collect();
        run.shrinkage.push(current.len() as f64 / a as f64);
    }
    run.joint_gain = cover.value - start_value;
    Ok(run)
}

/// Selects a near-independent set from `pool` relative to `base`.
///
/// Spends one round measuring `g(base)` and the pool's marginals, then one
/// round per selection iteration. The near-independence check for the
/// returned set is appended to `audit`.
#[allow(clippy::too_many_arguments)]
pub fn nis<G: SetFunction>(
    problem: &Problem<'_, G>,
    pool: &[ElementId],
    base: &[ElementId],
    params: &SolverParams,
    bucket: BucketSpec,
    seed: u64,
    mode: SamplingMode,
    ledger: &mut QueryLedger,
    audit: &mut NisAudit,
) -> Result<Vec<ElementId>> {
    if pool.iter().any(|v| base.contains(v)) {
        return Err(Error::Contract("pool and base must be disjoint".into()));
    }
    let g = problem.oracle();
    let state = g.state_of(base);
    let scan = if pool.is_empty() {
        None
    } else {
        Some(ledger.round(|counter| scan_state(g, &state, pool, counter))?)
    };
    let Some(scan) = scan else {
        return Ok(Vec::new());
    };
    let mut cover = PartialCover { members: base.to_vec(), state, value: scan.base_value };
    let pool: Vec<_> = pool.iter().copied().zip(scan.gains).collect();
    let run = nis_from(problem, params, bucket, &pool, &mut cover, StreamKey::new(seed), mode, ledger)?;
    audit.push(run.record(params.epsilon, &bucket));
    Ok(run.added)
}
