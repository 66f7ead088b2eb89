use serde::{Deserialize, Serialize};

use crate::batch::{scan_state, Scan};
use crate::error::{Error, Result};
use crate::ledger::QueryLedger;
use crate::oracle::SetFunction;
use crate::problem::Problem;

/// Sample counts above this are clamped and the run is flagged.
pub const MAX_SAMPLES: u64 = 1_000_000;

/// Every derived constant of the bucketed solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub epsilon: f64,
    /// Best initial gain-to-cost ratio, `max_v g(v)/c(v)`.
    pub beta: f64,
    /// Best initial gain, `max_v g(v)`.
    pub tau: u64,
    /// Number of ratio levels `T = ⌈log_{1/(1-ε)}(k·c_max/c_min)⌉`.
    pub outer: u64,
    /// Number of gain levels `ℓ = ⌈log_{1/(1-ε)} k⌉`.
    pub inner: u64,
    /// Sampling accuracy `ε̄ = (1 - 1/(2Tℓ))·ε/3`.
    pub eps_bar: f64,
    /// Iteration bound `r = ⌈log_{1/(1-ε̄)}(2mTℓ)/ε⌉` of one near-independent-set call.
    pub nis_rounds: u64,
    /// Per-estimate failure budget `δ = ε/(2rkT²ℓ)`.
    pub delta: f64,
    /// Samples per estimate, `8⌈ln(2/δ)/ε̄²⌉`, clamped to [`MAX_SAMPLES`].
    pub samples: u64,
    pub samples_capped: bool,
    pub m: usize,
    pub k: u64,
    /// `c_max / c_min` over the ground set.
    pub cost_spread: f64,
}

/// Smallest `n >= 1` with `(1/(1-ε))^n >= x`; that is `max(1, ⌈log_{1/(1-ε)} x⌉)`.
pub fn level_count(epsilon: f64, x: f64) -> u64 {
    let base = 1.0 / (1.0 - epsilon);
    let mut n = (x.ln() / base.ln()).ceil().max(1.0) as u64;
    // nudge away from round-off at exact powers
    while n > 1 && base.powi(n as i32 - 1) >= x {
        n -= 1;
    }
    while base.powi(n as i32) < x {
        n += 1;
    }
    n
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 0.2 {
        Ok(())
    } else {
        Err(Error::Config(format!("epsilon must lie in (0, 0.2), got {epsilon}")))
    }
}

impl SolverParams {
    /// The closed-form constants for `m` elements, demand `k` and cost spread
    /// `c_max/c_min`, before the singleton statistics `beta` and `tau` are
    /// known. Does not range-check `epsilon`.
    pub fn from_formulas(epsilon: f64, m: usize, k: u64, cost_spread: f64) -> Self {
        let outer = level_count(epsilon, k as f64 * cost_spread);
        let inner = level_count(epsilon, k as f64);
        let levels = (outer * inner) as f64;
        let eps_bar = (1.0 - 1.0 / (2.0 * levels)) * epsilon / 3.0;
        let log_base = -(1.0 - eps_bar).ln();
        let nis_rounds = (((2.0 * m as f64 * levels).ln() / log_base) / epsilon).ceil().max(1.0) as u64;
        let delta = epsilon / (2.0 * nis_rounds as f64 * k as f64 * (outer * outer) as f64 * inner as f64);
        let raw = 8.0 * ((2.0 / delta).ln() / (eps_bar * eps_bar)).ceil();
        let samples_capped = raw > MAX_SAMPLES as f64;
        Self {
            epsilon,
            beta: 0.0,
            tau: 0,
            outer,
            inner,
            eps_bar,
            nis_rounds,
            delta,
            samples: if samples_capped { MAX_SAMPLES } else { raw as u64 },
            samples_capped,
            m,
            k,
            cost_spread,
        }
    }

    /// Number of size guesses tried per iteration: `i = 0..=⌈log_{1+ε̄} m⌉`.
    pub fn guess_count(&self) -> u64 {
        let m = self.m.max(1) as f64;
        (m.ln() / (1.0 + self.eps_bar).ln()).ceil().max(0.0) as u64 + 1
    }
}

/// Derives the parameters for `problem` at accuracy `epsilon`, spending one
/// adaptive round on the singleton values `g(v)`. The scan is returned so
/// the caller can reuse it as the marginals over the empty set.
pub fn derive_params<G: SetFunction>(
    problem: &Problem<'_, G>,
    epsilon: f64,
    ledger: &mut QueryLedger,
) -> Result<(SolverParams, Scan)> {
    check_epsilon(epsilon)?;
    if problem.k() == 0 {
        return Err(Error::Contract("parameters need a positive demand".into()));
    }
    let (c_min, c_max) = problem
        .cost_range()
        .ok_or_else(|| Error::Contract("parameters need a nonempty ground set".into()))?;
    let g = problem.oracle();
    let empty = g.empty_state();
    let scan = ledger.round(|counter| scan_state(g, &empty, problem.ground(), counter))?;
    let mut params = SolverParams::from_formulas(epsilon, problem.m(), problem.k(), c_max / c_min);
    for (&v, &gain) in problem.ground().iter().zip(&scan.gains) {
        params.tau = params.tau.max(gain);
        params.beta = params.beta.max(gain as f64 / problem.cost(v));
    }
    Ok((params, scan))
}
