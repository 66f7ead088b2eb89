//! Bench rows and their CSV rendering.

use std::io::Write;

use minsmc_core::Algorithm;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: [&str; 16] = [
    "instance", "algorithm", "epsilon", "seed", "m", "k", "delta", "cost", "opt", "ratio", "bound", "rounds",
    "queries", "wall_ms", "fallback", "capped",
];

/// `x` with 9 significant digits, in the style of C's `%.9g`.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        trim_zeros(format!("{x:.*}", (8 - exp) as usize))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` rounded to what [`sig9`] prints, so JSON and CSV carry equal values.
pub fn round9(x: f64) -> f64 {
    sig9(x).parse().expect("sig9 output parses")
}

/// One bench run. Fields other than the run coordinates are empty when the
/// run failed; `error` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: Algorithm,
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub m: Option<usize>,
    pub k: Option<u64>,
    pub delta: Option<u64>,
    pub cost: Option<f64>,
    pub opt: Option<f64>,
    pub ratio: Option<f64>,
    pub bound: Option<f64>,
    pub rounds: Option<u64>,
    pub queries: Option<u64>,
    pub wall_ms: Option<f64>,
    pub fallback: Option<bool>,
    pub capped: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BenchRow {
    pub fn failed(instance: &str, algorithm: Algorithm, epsilon: Option<f64>, seed: u64, error: String) -> Self {
        Self {
            instance: instance.to_string(),
            algorithm,
            epsilon,
            seed,
            m: None,
            k: None,
            delta: None,
            cost: None,
            opt: None,
            ratio: None,
            bound: None,
            rounds: None,
            queries: None,
            wall_ms: None,
            fallback: None,
            capped: None,
            error: Some(error),
        }
    }

    /// Is the run's cost within `bound · opt` (absolute slack 1e-9)?
    /// `None` without an optimum to compare against.
    pub fn within_bound(&self) -> Option<bool> {
        match (self.cost, self.opt, self.bound) {
            (Some(cost), Some(opt), Some(bound)) => Some(cost <= bound * opt + 1e-9),
            _ => None,
        }
    }

    pub fn csv_record(&self) -> Vec<String> {
        fn cell<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
            v.map(f).unwrap_or_default()
        }
        let int = |v: u64| v.to_string();
        vec![
            self.instance.clone(),
            self.algorithm.to_string(),
            cell(self.epsilon, sig9),
            self.seed.to_string(),
            cell(self.m, |v| v.to_string()),
            cell(self.k, int),
            cell(self.delta, int),
            cell(self.cost, sig9),
            cell(self.opt, sig9),
            cell(self.ratio, sig9),
            cell(self.bound, sig9),
            cell(self.rounds, int),
            cell(self.queries, int),
            cell(self.wall_ms, sig9),
            cell(self.fallback, |b| b.to_string()),
            cell(self.capped, |b| b.to_string()),
        ]
    }
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.csv_record())?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}
