//! Fixed instances shared by the benchmarks.

use minsmc_core::{gen_random_coverage, CoverageInstance, GeneratorConfig};

/// Sizes every solver benchmark runs at.
pub const SIZES: [usize; 3] = [100, 400, 1600];

/// Random coverage instance with `m` elements over `4m` items, each element
/// covering about 8 items, costs on `[1, cost_high]`.
pub fn coverage(m: usize, cost_high: f64, seed: u64) -> CoverageInstance {
    let cfg = GeneratorConfig { cost_high, k_fraction: 0.8, ..GeneratorConfig::new(m, 4 * m, 2.0 / m as f64, seed) };
    gen_random_coverage(&cfg).expect("fixture config is valid")
}
