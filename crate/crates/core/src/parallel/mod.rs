//! The low-adaptivity solver: parameter derivation, the sampling estimator,
//! near-independent-set selection, the bucket loops and cost preprocessing.

mod bucket;
mod mean;
mod minsmc;
mod nis;
mod params;
mod preprocess;
mod rng;

pub use bucket::BucketSpec;
pub use mean::{exact_mean, mean_estimate, pair_count, SamplingMode, ENUMERATION_BUDGET};
pub use minsmc::{minsmc_par, ParOptions};
pub use nis::{nis, PartialCover};
pub use params::{derive_params, level_count, SolverParams, MAX_SAMPLES};
pub use preprocess::{minsmc_main, preprocess, PreprocessResult};
pub use rng::StreamKey;
