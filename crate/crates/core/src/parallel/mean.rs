//! Sampling estimate of `E[I_t(X, x)]`, where `X` is a uniform `t`-subset of
//! the pool `A`, `x` is uniform on `A \ X`, and the indicator asks whether
//! `g_{B ∪ X}(x) >= (1 - ε)·τ`. When `X = A` there is no `x` and the
//! indicator is 0.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::SolverParams;
use super::rng::{Purpose, StreamKey, CHUNK};
use crate::error::{Error, Result};
use crate::ledger::{QueryCounter, QueryLedger};
use crate::oracle::{ElementId, SetFunction};

/// Largest `C(|A|, t)·(|A| - t)` that [`exact_mean`] will enumerate.
pub const ENUMERATION_BUDGET: u64 = 1_000_000;

/// How an estimate is produced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Draw every `(X, x)` pair and query the oracle for each.
    Direct,
    /// When the space of `(X, x)` pairs is no larger than the sample count,
    /// enumerate it once to get the exact mean and draw the number of hits
    /// from `Binomial(samples, mean)`, which has the same distribution as
    /// direct sampling. Otherwise sample directly.
    #[default]
    Auto,
}

/// `C(a, t)·(a - t)`, saturating.
pub fn pair_count(a: usize, t: usize) -> u64 {
    if t > a {
        return 0;
    }
    let t_small = t.min(a - t) as u128;
    let mut c: u128 = 1;
    for i in 0..t_small {
        c = c * (a as u128 - i) / (i + 1);
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    u64::try_from(c * (a - t) as u128).unwrap_or(u64::MAX)
}

pub(crate) struct Indicator<'a, G: SetFunction> {
    pub g: &'a G,
    pub base: &'a G::State,
    pub pool: &'a [ElementId],
    /// `(1 - ε)·τ`.
    pub threshold: f64,
}

impl<G: SetFunction> Indicator<'_, G> {
    /// Hits over all `(X, x)` pairs, and the number of pairs.
    fn enumerate(&self, t: usize, counter: &QueryCounter) -> (u64, u64) {
        let a = self.pool.len();
        let hits = (0..a)
            .combinations(t)
            .par_bridge()
            .map(|subset| {
                let mut state = self.base.clone();
                let mut in_subset = vec![false; a];
                for &i in &subset {
                    self.g.insert(&mut state, self.pool[i]);
                    in_subset[i] = true;
                }
                // g(B ∪ X) once, then one query per x
                self.g.value(&state);
                counter.add(1 + (a - t) as u64);
                (0..a)
                    .filter(|&i| !in_subset[i])
                    .filter(|&i| self.g.gain(&state, self.pool[i]) as f64 >= self.threshold)
                    .count() as u64
            })
            .sum();
        (hits, pair_count(a, t))
    }

    /// Hits among `samples` independent draws from the stream `key`.
    fn sample(&self, t: usize, samples: u64, key: StreamKey, counter: &QueryCounter) -> u64 {
        let a = self.pool.len();
        let chunks = samples.div_ceil(CHUNK);
        counter.add(2 * samples);
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = key.chunk_rng(chunk);
                let n = CHUNK.min(samples - chunk * CHUNK);
                let mut perm: Vec<usize> = (0..a).collect();
                let mut hits = 0;
                for _ in 0..n {
                    // partial Fisher-Yates: perm[..t] is X, perm[t] is x
                    for j in 0..=t {
                        let r = rng.random_range(j..a);
                        perm.swap(j, r);
                    }
                    let mut state = self.base.clone();
                    for &i in &perm[..t] {
                        self.g.insert(&mut state, self.pool[i]);
                    }
                    let before = self.g.value(&state);
                    self.g.insert(&mut state, self.pool[perm[t]]);
                    if (self.g.value(&state) - before) as f64 >= self.threshold {
                        hits += 1;
                    }
                }
                hits
            })
            .sum()
    }
}

/// Per-round estimator. Exact enumerations are cached by `t`, since the
/// mean does not depend on which guess asked for it.
pub(crate) struct Estimator<'a, G: SetFunction> {
    indicator: Indicator<'a, G>,
    samples: u64,
    mode: SamplingMode,
    exact: HashMap<usize, (u64, u64)>,
}

impl<'a, G: SetFunction> Estimator<'a, G> {
    pub fn new(indicator: Indicator<'a, G>, samples: u64, mode: SamplingMode) -> Self {
        Self { indicator, samples, mode, exact: HashMap::new() }
    }

    /// Requires `1 <= t <= |A|`.
    pub fn estimate(&mut self, t: usize, key: StreamKey, counter: &QueryCounter) -> f64 {
        let a = self.indicator.pool.len();
        debug_assert!(t >= 1 && t <= a);
        if t == a {
            return 0.0;
        }
        if self.mode == SamplingMode::Auto && pair_count(a, t) <= self.samples {
            let indicator = &self.indicator;
            let (hits, pairs) = *self.exact.entry(t).or_insert_with(|| indicator.enumerate(t, counter));
            let mean = hits as f64 / pairs as f64;
            let draw = Binomial::new(self.samples, mean)
                .expect("mean is a probability")
                .sample(&mut key.for_purpose(Purpose::Binomial).rng());
            return draw as f64 / self.samples as f64;
        }
        let hits = self.indicator.sample(t, self.samples, key.for_purpose(Purpose::Estimate), counter);
        hits as f64 / self.samples as f64
    }
}

fn check_size(t: usize, a: usize) -> Result<()> {
    if t == 0 || t > a {
        return Err(Error::Contract(format!("sample size t = {t} must lie in 1..={a}")));
    }
    Ok(())
}

/// Estimates the mean indicator from `params.samples` draws, as one adaptive
/// round. Deterministic in `seed`.
#[allow(clippy::too_many_arguments)]
pub fn mean_estimate<G: SetFunction>(
    g: &G,
    base: &[ElementId],
    pool: &[ElementId],
    t: usize,
    tau_threshold: f64,
    params: &SolverParams,
    seed: u64,
    mode: SamplingMode,
    ledger: &mut QueryLedger,
) -> Result<f64> {
    check_size(t, pool.len())?;
    if t == pool.len() {
        return Ok(0.0);
    }
    let state = g.state_of(base);
    let indicator = Indicator { g, base: &state, pool, threshold: (1.0 - params.epsilon) * tau_threshold };
    let mut estimator = Estimator::new(indicator, params.samples, mode);
    ledger.round(|counter| estimator.estimate(t, StreamKey::new(seed), counter))
}

/// The exact mean indicator, by enumerating every `(X, x)` pair.
pub fn exact_mean<G: SetFunction>(
    g: &G,
    base: &[ElementId],
    pool: &[ElementId],
    t: usize,
    tau_threshold: f64,
    epsilon: f64,
) -> Result<f64> {
    check_size(t, pool.len())?;
    let pairs = pair_count(pool.len(), t);
    if pairs > ENUMERATION_BUDGET {
        return Err(Error::Refused(format!(
            "{pairs} (X, x) pairs exceed the enumeration budget of {ENUMERATION_BUDGET}"
        )));
    }
    if pairs == 0 {
        return Ok(0.0);
    }
    let state = g.state_of(base);
    let indicator = Indicator { g, base: &state, pool, threshold: (1.0 - epsilon) * tau_threshold };
    let (hits, pairs) = indicator.enumerate(t, &QueryCounter::default());
    Ok(hits as f64 / pairs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Modular;

    fn params(samples: u64) -> SolverParams {
        SolverParams { samples, ..SolverParams::from_formulas(0.1, 4, 4, 1.0) }
    }

    #[test]
    fn pair_counts() {
        assert_eq!(pair_count(4, 2), 12);
        assert_eq!(pair_count(6, 2), 60);
        assert_eq!(pair_count(5, 5), 0);
        assert_eq!(pair_count(3, 4), 0);
        assert_eq!(pair_count(200, 100), u64::MAX);
    }

    #[test]
    fn full_pool_is_zero() {
        let f = Modular::new(vec![1; 4]);
        let pool = [0, 1, 2, 3];
        let mut ledger = QueryLedger::new();
        let est = mean_estimate(&f, &[], &pool, 4, 1.0, &params(64), 1, SamplingMode::Direct, &mut ledger);
        assert_eq!(est.unwrap(), 0.0);
        assert_eq!(exact_mean(&f, &[], &pool, 4, 1.0, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn modular_at_threshold_is_one() {
        let f = Modular::new(vec![3; 5]);
        let pool = [0, 1, 2, 3, 4];
        for mode in [SamplingMode::Direct, SamplingMode::Auto] {
            let mut ledger = QueryLedger::new();
            let est = mean_estimate(&f, &[], &pool, 2, 3.0, &params(500), 9, mode, &mut ledger).unwrap();
            assert_eq!(est, 1.0);
            assert_eq!(ledger.rounds(), 1);
        }
        assert_eq!(exact_mean(&f, &[], &pool, 2, 3.0, 0.1).unwrap(), 1.0);
    }

    #[test]
    fn size_contract() {
        let f = Modular::new(vec![1; 3]);
        let mut ledger = QueryLedger::new();
        for t in [0, 4] {
            let err = mean_estimate(&f, &[], &[0, 1, 2], t, 1.0, &params(8), 0, SamplingMode::Direct, &mut ledger);
            assert!(matches!(err, Err(Error::Contract(_))));
            assert!(matches!(exact_mean(&f, &[], &[0, 1, 2], t, 1.0, 0.1), Err(Error::Contract(_))));
        }
        assert_eq!(ledger.rounds(), 0);
    }

    #[test]
    fn enumeration_budget() {
        let f = Modular::new(vec![1; 40]);
        let pool: Vec<_> = (0..40).collect();
        assert!(matches!(exact_mean(&f, &[], &pool, 10, 1.0, 0.1), Err(Error::Refused(_))));
    }

    #[test]
    fn direct_sampling_is_seed_deterministic() {
        let inst = crate::instances::CoverageInstance::unit(
            4,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 1, 2, 3]],
            vec![1.0; 5],
            4,
        )
        .unwrap();
        let pool = [0, 1, 2, 3, 4];
        let run = |seed| {
            mean_estimate(&inst, &[], &pool, 2, 1.0, &params(10_000), seed, SamplingMode::Direct, &mut QueryLedger::new())
                .unwrap()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }
}
