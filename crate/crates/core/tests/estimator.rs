//! The sampling target of the size-guess estimator, checked against an
//! independent enumeration over ordered draws.

mod common;

use common::brute_truncated;
use minsmc_core::{exact_mean, mean_estimate, CoverageInstance, QueryLedger, SamplingMode, SolverParams, Truncated};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `P[g_{B∪X}(x) >= threshold]` for `X` a uniform t-subset of `pool` and
/// `x` uniform on the rest, by enumerating ordered `(X, x)` draws: the first
/// `t` positions of every `(t+1)`-permutation form `X`, the last is `x`.
fn ordered_mean(inst: &CoverageInstance, base: &[usize], pool: &[usize], t: usize, threshold: f64) -> f64 {
    fn walk(
        inst: &CoverageInstance,
        base: &[usize],
        pool: &[usize],
        t: usize,
        threshold: f64,
        picked: &mut Vec<usize>,
        tally: &mut (u64, u64),
    ) {
        if picked.len() == t + 1 {
            let mut set: Vec<usize> = base.to_vec();
            set.extend(picked[..t].iter().map(|&i| pool[i]));
            let before = brute_truncated(inst, &set);
            set.push(pool[picked[t]]);
            let gain = brute_truncated(inst, &set) - before;
            tally.0 += u64::from(gain as f64 >= threshold);
            tally.1 += 1;
            return;
        }
        for i in 0..pool.len() {
            if !picked.contains(&i) {
                picked.push(i);
                walk(inst, base, pool, t, threshold, picked, tally);
                picked.pop();
            }
        }
    }
    if t >= pool.len() {
        return 0.0;
    }
    let mut tally = (0, 0);
    walk(inst, base, pool, t, threshold, &mut Vec::new(), &mut tally);
    tally.0 as f64 / tally.1 as f64
}

fn random_config(rng: &mut ChaCha8Rng) -> (CoverageInstance, Vec<usize>, Vec<usize>, f64) {
    let m = rng.random_range(3..=10);
    let universe = rng.random_range(3..=10);
    let covers = (0..m)
        .map(|_| {
            let mut c: Vec<usize> = (0..universe).filter(|_| rng.random_bool(0.35)).collect();
            if c.is_empty() {
                c.push(rng.random_range(0..universe));
            }
            c
        })
        .collect();
    let inst = CoverageInstance::unit(universe, covers, vec![1.0; m], 0).unwrap();
    let k = rng.random_range(1..=inst.total_value());
    let inst = inst.with_k(k).unwrap();
    let mut ids: Vec<usize> = (0..m).collect();
    for i in 0..m {
        ids.swap(i, rng.random_range(i..m));
    }
    let a = rng.random_range(2..=m.min(8));
    let base_len = rng.random_range(0..=(m - a).min(2));
    let pool = ids[..a].to_vec();
    let base = ids[a..a + base_len].to_vec();
    let tau = rng.random_range(1..=3) as f64;
    (inst, base, pool, tau)
}

#[test]
fn exact_mean_matches_ordered_enumeration_and_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let (inst, base, pool, tau) = random_config(&mut rng);
        let g = Truncated::new(&inst, inst.k());
        let eps = 0.1;
        let means: Vec<f64> = (1..=pool.len())
            .map(|t| {
                let mean = exact_mean(&g, &base, &pool, t, tau, eps).unwrap();
                let reference = ordered_mean(&inst, &base, &pool, t, (1.0 - eps) * tau);
                assert!((mean - reference).abs() < 1e-12, "t = {t}: {mean} vs {reference}");
                mean
            })
            .collect();
        assert!(means.windows(2).all(|w| w[0] >= w[1]), "{means:?}");
        assert_eq!(*means.last().unwrap(), 0.0);
    }
}

#[test]
fn estimates_center_on_exact_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let (inst, base, pool, tau) = random_config(&mut rng);
        let g = Truncated::new(&inst, inst.k());
        let params = SolverParams { samples: 4000, ..SolverParams::from_formulas(0.1, inst.m(), inst.k(), 1.0) };
        let exact = exact_mean(&g, &base, &pool, 1, tau, 0.1).unwrap();
        for mode in [SamplingMode::Direct, SamplingMode::Auto] {
            let mean: f64 = (0..20)
                .map(|seed| {
                    mean_estimate(&g, &base, &pool, 1, tau, &params, seed, mode, &mut QueryLedger::new()).unwrap()
                })
                .sum::<f64>()
                / 20.0;
            // 80k draws: standard error below 0.002
            assert!((mean - exact).abs() < 0.01, "{mode:?}: {mean} vs {exact}");
        }
    }
}
