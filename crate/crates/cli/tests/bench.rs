use std::fs;
use std::path::Path;

use minsmc_cli::bench::{csv_bytes, run_bench, write_outputs, BenchConfig, InstanceSpec};
use minsmc_cli::io::load_instance;
use minsmc_cli::{sig9, verify_solution, BenchRow, CSV_HEADER};
use minsmc_core::{gen_random_coverage, serialize_instance, Algorithm, GeneratorConfig, SamplingMode};

fn generated(seed: u64, m: usize) -> InstanceSpec {
    let cfg = GeneratorConfig { cost_high: 50.0, k_fraction: 0.8, ..GeneratorConfig::new(m, 24, 0.25, seed) };
    InstanceSpec { name: None, path: None, generator: Some(cfg) }
}

fn config(instances: Vec<InstanceSpec>, algorithms: Vec<Algorithm>, epsilons: Vec<f64>, seeds: Vec<u64>) -> BenchConfig {
    BenchConfig {
        instances,
        algorithms,
        epsilons,
        seeds,
        exact_limit: 16,
        csv: None,
        json: None,
        timing: false,
        sampling: SamplingMode::Auto,
    }
}

#[test]
fn one_greedy_run_is_one_row_with_a_ratio() {
    let cfg = config(vec![generated(1, 10)], vec![Algorithm::Greedy], vec![], vec![7]);
    let report = run_bench(&cfg).unwrap();
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    assert!(row.error.is_none());
    assert!(row.ratio.unwrap() >= 1.0 - 1e-9);
    assert_eq!(row.within_bound(), Some(true));
}

#[test]
fn rows_cover_the_product_in_config_order() {
    let instances = vec![generated(1, 10), generated(2, 12)];
    let cfg = config(instances, vec![Algorithm::Par, Algorithm::Main], vec![0.1], vec![1, 2, 3]);
    let report = run_bench(&cfg).unwrap();
    assert_eq!(report.rows.len(), 12);
    let mut expected = Vec::new();
    for inst in ["gen-1", "gen-2"] {
        for alg in [Algorithm::Par, Algorithm::Main] {
            for seed in [1, 2, 3] {
                expected.push((inst.to_string(), alg, seed));
            }
        }
    }
    let got: Vec<_> = report.rows.iter().map(|r| (r.instance.clone(), r.algorithm, r.seed)).collect();
    assert_eq!(got, expected);

    // epsilon multiplies only the algorithms that use it
    let cfg = config(vec![generated(3, 8)], vec![Algorithm::Greedy, Algorithm::Par], vec![0.05, 0.1, 0.15], vec![0, 1]);
    let report = run_bench(&cfg).unwrap();
    assert_eq!(report.rows.len(), 2 + 3 * 2);
    assert!(report.rows.iter().all(|r| r.epsilon.is_some() == (r.algorithm == Algorithm::Par)));
}

#[test]
fn reruns_without_timing_are_byte_identical() {
    let instances = vec![generated(4, 14), generated(5, 9)];
    let cfg = config(instances, vec![Algorithm::Greedy, Algorithm::Par, Algorithm::Main], vec![0.05, 0.15], vec![1, 2]);
    let first = csv_bytes(&run_bench(&cfg).unwrap().rows).unwrap();
    let second = csv_bytes(&run_bench(&cfg).unwrap().rows).unwrap();
    assert_eq!(first, second);
    let header = String::from_utf8(first).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header, CSV_HEADER.join(","));
}

fn json_cell(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_f64() => sig9(n.as_f64().unwrap()),
        other => other.to_string(),
    }
}

#[test]
fn csv_and_json_agree_field_for_field() {
    let dir = tempfile::tempdir().unwrap();
    let (csv_path, json_path) = (dir.path().join("rows.csv"), dir.path().join("rows.json"));
    let mut cfg =
        config(vec![generated(6, 11)], vec![Algorithm::Exact, Algorithm::Main], vec![0.1], vec![3, 4]);
    cfg.timing = true;
    cfg.instances.push(InstanceSpec { name: Some("missing".into()), path: Some(dir.path().join("nope.json")), generator: None });
    let report = run_bench(&cfg).unwrap();
    write_outputs(&report, Some(&csv_path), Some(&json_path)).unwrap();

    let json: serde_json::Value = serde_json::from_slice(&fs::read(&json_path).unwrap()).unwrap();
    let json_rows = json["rows"].as_array().unwrap();
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), json_rows.len());
    assert_eq!(records.len(), report.rows.len());
    for (record, row) in records.iter().zip(json_rows) {
        for (name, cell) in headers.iter().zip(record.iter()) {
            assert_eq!(cell, json_cell(&row[name]), "column {name}");
        }
    }
    assert_eq!(json["summary"], serde_json::to_value(&report.summary).unwrap());
}

#[test]
fn summary_matches_a_recount() {
    let instances = vec![generated(7, 10), generated(8, 13), generated(9, 30)];
    let cfg = config(instances, vec![Algorithm::Greedy, Algorithm::Par, Algorithm::Main], vec![0.1, 0.19], vec![1, 2]);
    let report = run_bench(&cfg).unwrap();
    for alg in [Algorithm::Greedy, Algorithm::Par, Algorithm::Main] {
        let rows: Vec<&BenchRow> = report.rows.iter().filter(|r| r.algorithm == alg).collect();
        let with_opt: Vec<_> = rows.iter().filter(|r| r.opt.is_some()).collect();
        let within = with_opt.iter().filter(|r| r.cost.unwrap() <= r.bound.unwrap() * r.opt.unwrap() + 1e-9).count();
        let s = report.summary.iter().find(|s| s.algorithm == alg).unwrap();
        assert_eq!(s.runs, rows.len());
        assert_eq!(s.errors, rows.iter().filter(|r| r.error.is_some()).count());
        assert_eq!(s.with_opt, with_opt.len());
        assert_eq!(s.within_bound, within);
        assert_eq!(s.success_fraction, Some(within as f64 / with_opt.len() as f64));
    }
    // the 30-element instance is above the exact limit
    assert!(report.rows.iter().filter(|r| r.instance == "gen-9").all(|r| r.opt.is_none() && r.ratio.is_none()));
}

fn write_instance(dir: &Path, name: &str, seed: u64) -> std::path::PathBuf {
    let cfg = GeneratorConfig { cost_high: 20.0, ..GeneratorConfig::new(9, 18, 0.3, seed) };
    let path = dir.join(name);
    fs::write(&path, serialize_instance(&gen_random_coverage(&cfg).unwrap())).unwrap();
    path
}

#[test]
fn every_row_verifies_against_its_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "a.json", 10);
    let inst = load_instance(&path).unwrap();
    let spec = InstanceSpec { name: None, path: Some(path), generator: None };
    let cfg = config(vec![spec], vec![Algorithm::Greedy, Algorithm::Exact, Algorithm::Par, Algorithm::Main], vec![0.1], vec![5]);
    let report = run_bench(&cfg).unwrap();
    assert_eq!(report.rows.len(), 4);
    for row in &report.rows {
        assert!(row.error.is_none(), "{row:?}");
        assert_eq!(row.instance, "a");
        let spec = minsmc_cli::RunSpec {
            algorithm: row.algorithm,
            epsilon: row.epsilon,
            seed: row.seed,
            exact_limit: 16,
            sampling: SamplingMode::Auto,
        };
        let (sol, _) = minsmc_cli::run_algorithm(&inst, &spec).unwrap();
        assert!(verify_solution(&inst, &sol).passed());
        assert_eq!(row.cost, Some(minsmc_cli::table::round9(sol.total_cost)));
    }
}

#[test]
fn unreadable_instance_gives_error_rows() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_instance(dir.path(), "good.json", 11);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, b"{ not json").unwrap();
    let specs = vec![
        InstanceSpec { name: None, path: Some(bad), generator: None },
        InstanceSpec { name: None, path: Some(good), generator: None },
    ];
    let cfg = config(specs, vec![Algorithm::Greedy, Algorithm::Par], vec![0.1], vec![1, 2]);
    let report = run_bench(&cfg).unwrap();
    assert_eq!(report.rows.len(), 8);
    let (bad_rows, good_rows) = report.rows.split_at(4);
    assert!(bad_rows.iter().all(|r| r.instance == "bad" && r.error.is_some() && r.cost.is_none()));
    assert!(good_rows.iter().all(|r| r.error.is_none()));
    let greedy = report.summary.iter().find(|s| s.algorithm == Algorithm::Greedy).unwrap();
    assert_eq!((greedy.runs, greedy.errors), (4, 2));
}

#[test]
fn invalid_configs_are_rejected() {
    let base = config(vec![generated(1, 5)], vec![Algorithm::Par], vec![0.1], vec![1]);
    let cases = [
        BenchConfig { epsilons: vec![], ..base.clone() },
        BenchConfig { epsilons: vec![0.2], ..base.clone() },
        BenchConfig { epsilons: vec![0.0], ..base.clone() },
        BenchConfig { seeds: vec![], ..base.clone() },
        BenchConfig { algorithms: vec![], ..base.clone() },
        BenchConfig { instances: vec![], ..base.clone() },
        BenchConfig { instances: vec![InstanceSpec { name: None, path: None, generator: None }], ..base.clone() },
    ];
    for cfg in cases {
        assert!(matches!(run_bench(&cfg), Err(minsmc_cli::HarnessError::Config(_))), "{cfg:?}");
    }
    assert!(run_bench(&base).is_ok());
}

#[test]
fn config_paths_resolve_against_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("data")).unwrap();
    write_instance(&dir.path().join("data"), "x.json", 12);
    let text = r#"{"instances":[{"path":"data/x.json"}],"algorithms":["greedy"],"seeds":[0],"csv":"out.csv"}"#;
    let cfg_path = dir.path().join("bench.json");
    fs::write(&cfg_path, text).unwrap();
    let cfg = BenchConfig::load(&cfg_path).unwrap();
    assert_eq!(cfg.instances[0].path.as_deref(), Some(dir.path().join("data/x.json").as_path()));
    assert_eq!(cfg.csv.as_deref(), Some(dir.path().join("out.csv").as_path()));
    assert!(cfg.timing);
    assert!(run_bench(&cfg).unwrap().rows[0].error.is_none());

    fs::write(&cfg_path, r#"{"instances":[],"algorithms":[],"seeds":[],"typo":1}"#).unwrap();
    assert!(matches!(BenchConfig::load(&cfg_path), Err(minsmc_cli::HarnessError::Parse { .. })));
}
