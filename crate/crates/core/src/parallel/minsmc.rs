//! The bucketed solver: walk ratio levels `t` and gain levels `t′`, and
//! from each nonempty bucket add a near-independent set to the solution.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::bucket::BucketSpec;
use super::mean::SamplingMode;
use super::nis::{nis_from, PartialCover};
use super::params::derive_params;
use super::rng::StreamKey;
use crate::baselines::greedy_extend;
use crate::batch::scan_state;
use crate::error::Result;
use crate::ledger::QueryLedger;
use crate::oracle::{ElementId, SetFunction};
use crate::problem::Problem;
use crate::report::{Algorithm, RunReport, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParOptions {
    pub epsilon: f64,
    pub seed: u64,
    #[serde(default)]
    pub sampling: SamplingMode,
}

impl ParOptions {
    pub fn new(epsilon: f64, seed: u64) -> Self {
        Self { epsilon, seed, sampling: SamplingMode::default() }
    }
}

/// Runs the bucket loops on `problem`, filling the solver fields of
/// `report`. Returns the final cover; with `k = 0` it is empty and no round
/// is spent.
pub(crate) fn run_par<G: SetFunction>(
    problem: &Problem<'_, G>,
    opts: &ParOptions,
    ledger: &mut QueryLedger,
    report: &mut RunReport,
) -> Result<PartialCover<G::State>> {
    let g = problem.oracle();
    let k = problem.k();
    if k == 0 {
        return Ok(PartialCover { members: Vec::new(), state: g.empty_state(), value: 0 });
    }
    let (params, scan) = derive_params(problem, opts.epsilon, ledger)?;
    report.breakdown.params += 1;
    report.params = Some(params);
    report.m_prime_capped |= params.samples_capped;

    let mut cover = PartialCover { members: Vec::new(), state: g.empty_state(), value: scan.base_value };
    // marginals of the unchosen elements over the current cover; `fresh`
    // is false once the cover has moved past them
    let mut known: Vec<(ElementId, u64)> = problem.ground().iter().copied().zip(scan.gains).collect();
    let mut fresh = true;
    let root = StreamKey::new(opts.seed);

    'levels: for t in 1..=params.outer {
        for t_prime in 1..=params.inner {
            if cover.value >= k {
                break 'levels;
            }
            if !fresh {
                let ids: Vec<ElementId> = known.iter().map(|&(v, _)| v).collect();
                let scan = ledger.round(|counter| scan_state(g, &cover.state, &ids, counter))?;
                report.breakdown.bucket_scans += 1;
                cover.value = scan.base_value;
                known = ids.into_iter().zip(scan.gains).collect();
                fresh = true;
            }
            let bucket = BucketSpec::new(&params, t, t_prime);
            let pool: Vec<(ElementId, u64)> =
                known.iter().copied().filter(|&(v, gain)| bucket.contains(gain, problem.cost(v))).collect();
            if pool.is_empty() {
                continue;
            }
            let key = root.child(t).child(t_prime);
            let run = nis_from(problem, &params, bucket, &pool, &mut cover, key, opts.sampling, ledger)?;
            report.breakdown.nis_iterations += run.iterations;
            report.nis_audit.push(run.record(params.epsilon, &bucket));
            report.shrinkage.extend_from_slice(&run.shrinkage);
            if !run.added.is_empty() {
                known.retain(|(v, _)| !run.added.contains(v));
                fresh = false;
            }
        }
    }

    if cover.value < k {
        let run = greedy_extend(problem, &cover.members, cover.state, Some(cover.value), ledger)?;
        report.breakdown.fallback += run.iterations;
        report.fallback_used = true;
        cover.members.extend(run.added);
        cover.state = run.state;
        cover.value = run.value;
    }
    Ok(cover)
}

/// The bucketed parallel solver on `problem` as given.
///
/// Rounds: one for the singleton values, one per bucket whose scan follows
/// a change to the solution, and one per near-independent-set iteration.
/// If the level loops finish without reaching `k`, greedy completes the
/// solution and the report says so.
pub fn minsmc_par<G: SetFunction>(
    problem: &Problem<'_, G>,
    opts: &ParOptions,
    ledger: &mut QueryLedger,
) -> Result<(Solution, RunReport)> {
    let start = Instant::now();
    let before = ledger.snapshot();
    let mut report = RunReport::new(Algorithm::Par, Some(opts.seed), Some(opts.epsilon));
    let cover = run_par(problem, opts, ledger, &mut report)?;
    let mut chosen = cover.members;
    chosen.sort_unstable();
    let solution = Solution {
        total_cost: problem.set_cost(&chosen),
        chosen,
        achieved: cover.value,
        algorithm: Algorithm::Par,
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
