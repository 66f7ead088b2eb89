//! Command-line front end, solution checker and benchmark harness for the
//! `minsmc-core` solvers.

pub mod bench;
pub mod error;
pub mod io;
pub mod run;
pub mod table;
pub mod verify;

pub use bench::{run_bench, summarize, AlgorithmSummary, BenchConfig, BenchReport, InstanceSpec};
pub use error::{HarnessError, Result};
pub use run::{ratio_bound, run_algorithm, RunSpec};
pub use table::{sig9, BenchRow, CSV_HEADER};
pub use verify::{verify_solution, Check, VerifyReport};
