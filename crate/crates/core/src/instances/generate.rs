use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CoverageInstance;
use crate::error::InstanceError;

/// Parameters for a random weighted-coverage instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub m: usize,
    pub universe_size: usize,
    /// Probability that a given element covers a given item.
    pub density: f64,
    pub cost_low: f64,
    pub cost_high: f64,
    /// `k = max(1, ⌊k_fraction · f(V)⌋)`.
    pub k_fraction: f64,
    pub seed: u64,
    /// Item weights are drawn uniformly from `1..=max_item_weight`; 1 keeps
    /// unit weights and omits them from the instance.
    #[serde(default = "one")]
    pub max_item_weight: u64,
}

fn one() -> u64 {
    1
}

impl GeneratorConfig {
    pub fn new(m: usize, universe_size: usize, density: f64, seed: u64) -> Self {
        Self {
            m,
            universe_size,
            density,
            cost_low: 1.0,
            cost_high: 10.0,
            k_fraction: 1.0,
            seed,
            max_item_weight: 1,
        }
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let bad = |msg: &str| Err(InstanceError::Generator(msg.to_string()));
        if self.m == 0 {
            return bad("m must be positive");
        }
        if self.universe_size == 0 {
            return bad("universe_size must be positive");
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad("density must lie in (0, 1]");
        }
        if !(self.cost_low > 0.0 && self.cost_low <= self.cost_high && self.cost_high.is_finite()) {
            return bad("costs need 0 < cost_low <= cost_high < inf");
        }
        if !(self.k_fraction > 0.0 && self.k_fraction <= 1.0) {
            return bad("k_fraction must lie in (0, 1]");
        }
        if self.max_item_weight == 0 {
            return bad("max_item_weight must be positive");
        }
        Ok(())
    }
}

/// Deterministic in the whole config. Every item ends up covered: items no
/// element picked are assigned to one element chosen uniformly. Costs are
/// log-uniform on `[cost_low, cost_high]`.
pub fn gen_random_coverage(cfg: &GeneratorConfig) -> Result<CoverageInstance, InstanceError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut covers: Vec<Vec<usize>> = (0..cfg.m)
        .map(|_| (0..cfg.universe_size).filter(|_| rng.random_bool(cfg.density)).collect())
        .collect();
    let mut covered = vec![false; cfg.universe_size];
    for list in &covers {
        for &u in list {
            covered[u] = true;
        }
    }
    for u in (0..cfg.universe_size).filter(|&u| !covered[u]) {
        covers[rng.random_range(0..cfg.m)].push(u);
    }
    for list in &mut covers {
        list.sort_unstable();
    }

    let item_weights = (cfg.max_item_weight > 1).then(|| {
        (0..cfg.universe_size).map(|_| rng.random_range(1..=cfg.max_item_weight)).collect()
    });

    let (lo, hi) = (cfg.cost_low.ln(), cfg.cost_high.ln());
    let costs = (0..cfg.m)
        .map(|_| if lo < hi { rng.random_range(lo..hi).exp().clamp(cfg.cost_low, cfg.cost_high) } else { cfg.cost_low })
        .collect();

    let probe = CoverageInstance::new(cfg.universe_size, covers, item_weights, costs, 0)?;
    let k = ((cfg.k_fraction * probe.total_value() as f64).floor() as u64).max(1);
    probe.with_k(k)
}
