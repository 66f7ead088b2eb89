use serde::{Deserialize, Serialize};

use super::params::SolverParams;

/// Ratio and gain windows of bucket `(t, t′)`.
///
/// Intervals are half-open `[lo, hi)` so that an element sitting exactly on
/// a level boundary belongs to one bucket only; the first level of each
/// axis (`t = 1`, `t′ = 1`) closes its top so the best element is included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketSpec {
    pub t: u64,
    pub t_prime: u64,
    pub ratio_lo: f64,
    pub ratio_hi: f64,
    pub gain_lo: f64,
    pub gain_hi: f64,
}

impl BucketSpec {
    pub fn new(params: &SolverParams, t: u64, t_prime: u64) -> Self {
        let q = 1.0 - params.epsilon;
        let tau = params.tau as f64;
        Self {
            t,
            t_prime,
            ratio_lo: q.powi(t as i32) * params.beta,
            ratio_hi: q.powi(t as i32 - 1) * params.beta,
            gain_lo: q.powi(t_prime as i32) * tau,
            gain_hi: q.powi(t_prime as i32 - 1) * tau,
        }
    }

    pub fn contains(&self, gain: u64, cost: f64) -> bool {
        let ratio = gain as f64 / cost;
        let gain = gain as f64;
        let ratio_top = if self.t == 1 { ratio <= self.ratio_hi } else { ratio < self.ratio_hi };
        let gain_top = if self.t_prime == 1 { gain <= self.gain_hi } else { gain < self.gain_hi };
        self.ratio_lo <= ratio && ratio_top && self.gain_lo <= gain && gain_top
    }
}
