//! Benchmark runs over a Cartesian product of instances, algorithms,
//! accuracies and seeds.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use minsmc_core::{
    exact_solve, gen_random_coverage, Algorithm, CoverageInstance, GeneratorConfig, Problem, SamplingMode,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::io::{load_instance, read_json, to_json_bytes, write_bytes};
use crate::run::{ratio_bound, run_algorithm, RunSpec};
use crate::table::{round9, write_csv, BenchRow};
use crate::verify::verify_solution;

/// Where a bench instance comes from: a file or a generator config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    /// Row label; defaults to the file stem or `gen-<seed>`.
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub generator: Option<GeneratorConfig>,
}

impl InstanceSpec {
    pub fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match (&self.path, &self.generator) {
            (Some(path), _) => path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into()),
            (None, Some(cfg)) => format!("gen-{}", cfg.seed),
            (None, None) => "unnamed".to_string(),
        }
    }

    fn load(&self) -> Result<CoverageInstance> {
        match (&self.path, &self.generator) {
            (Some(path), None) => load_instance(path),
            (None, Some(cfg)) => Ok(gen_random_coverage(cfg).map_err(minsmc_core::Error::from)?),
            _ => Err(HarnessError::Config(format!("instance `{}` needs exactly one of path or generator", self.label()))),
        }
    }
}

fn default_exact_limit() -> usize {
    16
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<Algorithm>,
    /// Accuracies for `par` and `main`; `greedy` and `exact` ignore them and
    /// run once per seed.
    #[serde(default)]
    pub epsilons: Vec<f64>,
    pub seeds: Vec<u64>,
    /// Instances with at most this many elements get an exact optimum.
    #[serde(default = "default_exact_limit")]
    pub exact_limit: usize,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
    /// When false, `wall_ms` is left empty so reruns are byte-identical.
    #[serde(default = "yes")]
    pub timing: bool,
    #[serde(default)]
    pub sampling: SamplingMode,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.instances.is_empty() {
            return bad("no instances".into());
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms".into());
        }
        if self.seeds.is_empty() {
            return bad("no seeds".into());
        }
        if self.algorithms.iter().any(|a| a.uses_epsilon()) && self.epsilons.is_empty() {
            return bad("par and main need at least one epsilon".into());
        }
        if let Some(eps) = self.epsilons.iter().find(|&&e| !(e > 0.0 && e < 0.2)) {
            return bad(format!("epsilon {eps} outside (0, 0.2)"));
        }
        for spec in &self.instances {
            if spec.path.is_some() == spec.generator.is_some() {
                return bad(format!("instance `{}` needs exactly one of path or generator", spec.label()));
            }
        }
        Ok(())
    }

    /// Reads a config file. Relative instance and output paths are taken
    /// relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg: BenchConfig = read_json(path)?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        for spec in &mut cfg.instances {
            spec.path.as_mut().map(resolve);
        }
        cfg.csv.as_mut().map(resolve);
        cfg.json.as_mut().map(resolve);
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub errors: usize,
    /// Runs with an exact optimum to compare against.
    pub with_opt: usize,
    pub within_bound: usize,
    /// `within_bound / with_opt`, when `with_opt > 0`.
    pub success_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<AlgorithmSummary>,
}

pub fn summarize(rows: &[BenchRow]) -> Vec<AlgorithmSummary> {
    let mut by_algorithm: BTreeMap<Algorithm, AlgorithmSummary> = BTreeMap::new();
    for row in rows {
        let entry = by_algorithm.entry(row.algorithm).or_insert(AlgorithmSummary {
            algorithm: row.algorithm,
            runs: 0,
            errors: 0,
            with_opt: 0,
            within_bound: 0,
            success_fraction: None,
        });
        entry.runs += 1;
        entry.errors += usize::from(row.error.is_some());
        if let Some(ok) = row.within_bound() {
            entry.with_opt += 1;
            entry.within_bound += usize::from(ok);
        }
    }
    by_algorithm
        .into_values()
        .map(|mut s| {
            s.success_fraction = (s.with_opt > 0).then(|| s.within_bound as f64 / s.with_opt as f64);
            s
        })
        .collect()
}

struct Loaded {
    label: String,
    instance: std::result::Result<CoverageInstance, String>,
    opt: Option<f64>,
}

fn load_all(cfg: &BenchConfig) -> Vec<Loaded> {
    cfg.instances
        .par_iter()
        .map(|spec| {
            let instance = spec.load().map_err(|e| e.to_string());
            let opt = instance.as_ref().ok().filter(|inst| inst.m() <= cfg.exact_limit).and_then(|inst| {
                let problem = Problem::from_instance(inst).ok()?;
                exact_solve(&problem, cfg.exact_limit).ok().map(|sol| sol.total_cost)
            });
            Loaded { label: spec.label(), instance, opt }
        })
        .collect()
}

fn bench_row(loaded: &Loaded, spec: &RunSpec, timing: bool) -> BenchRow {
    let inst = match &loaded.instance {
        Ok(inst) => inst,
        Err(e) => return BenchRow::failed(&loaded.label, spec.algorithm, spec.epsilon, spec.seed, e.clone()),
    };
    let fail = |msg: String| BenchRow::failed(&loaded.label, spec.algorithm, spec.epsilon, spec.seed, msg);
    let (sol, report) = match run_algorithm(inst, spec) {
        Ok(run) => run,
        Err(e) => return fail(e.to_string()),
    };
    let check = verify_solution(inst, &sol);
    if !check.passed() {
        let what: Vec<String> = check.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return fail(format!("verification failed: {}", what.join("; ")));
    }
    let delta = inst.max_singleton();
    let cost = round9(sol.total_cost);
    let opt = loaded.opt.map(round9);
    BenchRow {
        instance: loaded.label.clone(),
        algorithm: spec.algorithm,
        epsilon: spec.epsilon.map(round9),
        seed: spec.seed,
        m: Some(inst.m()),
        k: Some(inst.k()),
        delta: Some(delta),
        cost: Some(cost),
        opt,
        ratio: loaded.opt.filter(|&o| o > 0.0).map(|o| round9(sol.total_cost / o)),
        bound: Some(round9(ratio_bound(spec.algorithm, delta, inst.k(), spec.epsilon))),
        rounds: Some(report.rounds),
        queries: Some(report.queries),
        wall_ms: timing.then(|| round9(report.wall_ms)),
        fallback: Some(report.fallback_used),
        capped: Some(report.m_prime_capped),
        error: None,
    }
}

/// Runs every (instance, algorithm, ε, seed) combination. Runs execute in
/// parallel; rows come back in configuration order. A bad instance or a
/// failed run becomes an error row and the bench carries on.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let loaded = load_all(cfg);
    let mut plan = Vec::new();
    for (i, _) in loaded.iter().enumerate() {
        for &algorithm in &cfg.algorithms {
            let epsilons: Vec<Option<f64>> =
                if algorithm.uses_epsilon() { cfg.epsilons.iter().copied().map(Some).collect() } else { vec![None] };
            for epsilon in epsilons {
                for &seed in &cfg.seeds {
                    let spec =
                        RunSpec { algorithm, epsilon, seed, exact_limit: cfg.exact_limit, sampling: cfg.sampling };
                    plan.push((i, spec));
                }
            }
        }
    }
    let rows: Vec<BenchRow> = plan.par_iter().map(|(i, spec)| bench_row(&loaded[*i], spec, cfg.timing)).collect();
    let summary = summarize(&rows);
    Ok(BenchReport { rows, summary })
}

/// CSV bytes for the rows, header first.
pub fn csv_bytes(rows: &[BenchRow]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    write_csv(rows, &mut out)?;
    Ok(out)
}

/// Writes the CSV and JSON outputs that have a destination. With neither,
/// the CSV goes to stdout.
pub fn write_outputs(report: &BenchReport, csv: Option<&Path>, json: Option<&Path>) -> Result<()> {
    let table = csv_bytes(&report.rows)?;
    if let Some(path) = csv {
        write_bytes(path, &table)?;
    }
    if let Some(path) = json {
        write_bytes(path, &to_json_bytes(report))?;
    }
    if csv.is_none() && json.is_none() {
        std::io::stdout()
            .write_all(&table)
            .map_err(|source| HarnessError::Write { path: PathBuf::from("<stdout>"), source })?;
    }
    Ok(())
}
