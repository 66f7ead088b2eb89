use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minsmc_cli::bench::{run_bench, write_outputs, BenchConfig};
use minsmc_cli::io::{load_instance, load_solution, read_json, to_json_bytes, write_bytes};
use minsmc_cli::{run_algorithm, verify_solution, HarnessError, Result, RunSpec};
use minsmc_core::{gen_random_coverage, serialize_instance, Algorithm, GeneratorConfig, RunReport, SamplingMode, Solution};

#[derive(Parser)]
#[command(name = "minsmc", version, about = "Minimum cost submodular cover solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random coverage instance from a generator config.
    Gen {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parallel solver.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ParAlgorithm::Main)]
        algorithm: ParAlgorithm,
        #[arg(long, value_enum, default_value_t = Sampling::Auto)]
        sampling: Sampling,
        #[command(flatten)]
        out: Outputs,
    },
    /// Run the sequential greedy baseline.
    Greedy {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        out: Outputs,
    },
    /// Solve exactly by subset enumeration.
    Exact {
        #[arg(long)]
        instance: PathBuf,
        /// Refuse instances with more elements than this.
        #[arg(long, default_value_t = minsmc_core::DEFAULT_SUBSET_LIMIT)]
        limit: usize,
        #[command(flatten)]
        out: Outputs,
    },
    /// Run a benchmark config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's CSV destination.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overrides the config's JSON destination.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check a solution against an instance. Exits 1 if any check fails.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
}

#[derive(clap::Args)]
struct Outputs {
    /// Write the solution JSON here instead of stdout.
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Write the run report JSON here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParAlgorithm {
    Par,
    Main,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampling {
    Auto,
    Direct,
}

impl From<Sampling> for SamplingMode {
    fn from(s: Sampling) -> Self {
        match s {
            Sampling::Auto => SamplingMode::Auto,
            Sampling::Direct => SamplingMode::Direct,
        }
    }
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(path) => write_bytes(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|source| HarnessError::Write { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn solve(instance: &Path, spec: RunSpec, out: &Outputs) -> Result<()> {
    let inst = load_instance(instance)?;
    let (solution, report): (Solution, RunReport) = run_algorithm(&inst, &spec)?;
    emit(out.solution.as_deref(), &to_json_bytes(&solution))?;
    if let Some(path) = &out.report {
        write_bytes(path, &to_json_bytes(&report))?;
    }
    eprintln!(
        "{}: cost {} achieved {}/{} with {} elements, {} rounds, {} queries",
        spec.algorithm,
        solution.total_cost,
        solution.achieved,
        inst.k(),
        solution.chosen.len(),
        report.rounds,
        report.queries
    );
    Ok(())
}

fn spec(algorithm: Algorithm, epsilon: Option<f64>, seed: u64, exact_limit: usize, sampling: SamplingMode) -> RunSpec {
    RunSpec { algorithm, epsilon, seed, exact_limit, sampling }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limit = minsmc_core::DEFAULT_SUBSET_LIMIT;
    match cli.command {
        Command::Gen { config, out } => {
            let cfg: GeneratorConfig = read_json(&config)?;
            let inst = gen_random_coverage(&cfg).map_err(minsmc_core::Error::from)?;
            emit(out.as_deref(), &serialize_instance(&inst))?;
        }
        Command::Solve { instance, epsilon, seed, algorithm, sampling, out } => {
            let algorithm = match algorithm {
                ParAlgorithm::Par => Algorithm::Par,
                ParAlgorithm::Main => Algorithm::Main,
            };
            solve(&instance, spec(algorithm, Some(epsilon), seed, limit, sampling.into()), &out)?;
        }
        Command::Greedy { instance, out } => {
            solve(&instance, spec(Algorithm::Greedy, None, 0, limit, SamplingMode::Auto), &out)?;
        }
        Command::Exact { instance, limit, out } => {
            solve(&instance, spec(Algorithm::Exact, None, 0, limit, SamplingMode::Auto), &out)?;
        }
        Command::Bench { config, csv, json } => {
            let mut cfg = BenchConfig::load(&config)?;
            cfg.csv = csv.or(cfg.csv);
            cfg.json = json.or(cfg.json);
            let report = run_bench(&cfg)?;
            write_outputs(&report, cfg.csv.as_deref(), cfg.json.as_deref())?;
            for s in &report.summary {
                let fraction = s.success_fraction.map_or("n/a".to_string(), |f| format!("{f:.3}"));
                eprintln!(
                    "{}: {} runs, {} errors, {}/{} within bound ({fraction})",
                    s.algorithm, s.runs, s.errors, s.within_bound, s.with_opt
                );
            }
        }
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance)?;
            let sol = load_solution(&solution)?;
            let report = verify_solution(&inst, &sol);
            for check in &report.checks {
                println!("{} {}: {}", if check.passed { "ok  " } else { "FAIL" }, check.name, check.detail);
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("MINSMC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage code would collide with infeasible demand
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
