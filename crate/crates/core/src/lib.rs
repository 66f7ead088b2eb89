//! Minimum cost submodular cover: choose a cheapest set `S` of elements with
//! `f(S) >= k` for a monotone submodular `f`.
//!
//! The main entry points are [`minsmc_main`] (cost preprocessing plus the
//! bucketed low-adaptivity solver), [`minsmc_par`] (the bucketed solver
//! alone), and the [`greedy_solve`] and [`exact_solve`] baselines. Every
//! oracle query a solver makes is charged to a [`QueryLedger`], which counts
//! adaptive rounds and queries.

pub mod baselines;
pub mod batch;
pub mod error;
pub mod instances;
pub mod ledger;
pub mod oracle;
pub mod parallel;
pub mod problem;
pub mod report;

pub use baselines::{exact_solve, greedy_solve, DEFAULT_SUBSET_LIMIT};
pub use batch::{batch_marginals, marginal, truncated_eval, Scan};
pub use error::{Error, InstanceError, Result};
pub use instances::{gen_random_coverage, parse_instance, serialize_instance, CoverageInstance, GeneratorConfig};
pub use ledger::{LedgerSnapshot, QueryLedger};
pub use oracle::{Contracted, ElementId, SetFunction, Truncated};
pub use parallel::{
    derive_params, exact_mean, level_count, mean_estimate, minsmc_main, minsmc_par, nis, preprocess, BucketSpec,
    ParOptions, PreprocessResult, SamplingMode, SolverParams,
};
pub use problem::Problem;
pub use report::{harmonic, Algorithm, NisAudit, NisRecord, RoundBreakdown, RunReport, Solution};
