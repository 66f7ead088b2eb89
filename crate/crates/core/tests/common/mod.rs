#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use minsmc_core::{gen_random_coverage, CoverageInstance, ElementId, GeneratorConfig, SetFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coverage value computed from the raw cover lists, sharing no code with
/// the library's bitset oracle.
pub fn brute_value(inst: &CoverageInstance, set: &[ElementId]) -> u64 {
    let items: BTreeSet<usize> = set.iter().flat_map(|&v| inst.covers(v).iter().copied()).collect();
    items.iter().map(|&u| inst.weight(u)).sum()
}

pub fn brute_truncated(inst: &CoverageInstance, set: &[ElementId]) -> u64 {
    brute_value(inst, set).min(inst.k())
}

fn members(mask: u32, m: usize) -> Vec<ElementId> {
    (0..m).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Minimum cost of a feasible set by scanning all `2^m` subsets.
pub fn brute_opt(inst: &CoverageInstance) -> f64 {
    let m = inst.m();
    assert!(m <= 20);
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << m) {
        let set = members(mask, m);
        let cost: f64 = set.iter().map(|&v| inst.costs()[v]).sum();
        if cost < best && brute_value(inst, &set) >= inst.k() {
            best = cost;
        }
    }
    best
}

/// Random small instances with mixed densities, weights and cost spreads.
pub fn small_instances(count: usize, seed: u64, max_m: usize) -> Vec<CoverageInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let m = rng.random_range(3..=max_m);
            let mut cfg = GeneratorConfig::new(m, rng.random_range(4..=24), rng.random_range(0.1..0.5), seed ^ i as u64);
            cfg.cost_high = [1.0, 4.0, 100.0][i % 3];
            cfg.k_fraction = rng.random_range(0.3..=1.0);
            cfg.max_item_weight = if i % 4 == 0 { 5 } else { 1 };
            gen_random_coverage(&cfg).unwrap()
        })
        .collect()
}

/// Counts every `value` and `gain` call made through it.
pub struct Probe<G> {
    pub inner: G,
    calls: AtomicU64,
}

impl<G> Probe<G> {
    pub fn new(inner: G) -> Self {
        Self { inner, calls: AtomicU64::new(0) }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl<G: SetFunction> SetFunction for Probe<G> {
    type State = G::State;

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn empty_state(&self) -> Self::State {
        self.inner.empty_state()
    }
    fn insert(&self, state: &mut Self::State, v: ElementId) {
        self.inner.insert(state, v)
    }
    fn value(&self, state: &Self::State) -> u64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.value(state)
    }
    fn gain(&self, state: &Self::State, v: ElementId) -> u64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.gain(state, v)
    }
}
