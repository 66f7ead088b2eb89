//! Concrete integer monotone submodular oracles and their file format.

mod coverage;
mod format;
mod generate;

pub use coverage::{CoverState, CoverageInstance};
pub use format::{parse_instance, serialize_instance};
pub use generate::{gen_random_coverage, GeneratorConfig};
