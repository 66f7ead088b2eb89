//! Sequential greedy and exhaustive search, used as correctness and ratio
//! references for the parallel solver.

mod exact;
mod greedy;

pub use exact::{exact_solve, DEFAULT_SUBSET_LIMIT};
pub use greedy::greedy_solve;
pub(crate) use greedy::greedy_extend;
