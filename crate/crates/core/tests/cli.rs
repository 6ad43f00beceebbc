use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_interval-robust");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("INTERVAL_ROBUST_SEED")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn estimate_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "one.csv", "inf,sup\n3,7\n");
    let out = run(&["estimate", &data, "--theta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["median"]["interval"]["inf"], 3.0);
    assert_eq!(doc["median"]["interval"]["sup"], 7.0);
    assert_eq!(doc["mean"]["interval"]["inf"], 3.0);
    assert_eq!(doc["mean"]["interval"]["sup"], 7.0);
    assert_eq!(doc["median"]["unique"], false);
    for key in ["theta", "tol", "max_iter", "seed", "version", "tool"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn estimate_mean_of_two_rows() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "two.csv", "# two rows\r\ninf,sup\r\n0,2\r\n2,4\r\n");
    let out = run(&["estimate", &data]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["mean"]["interval"]["inf"], 1.0);
    assert_eq!(doc["mean"]["interval"]["sup"], 3.0);
}

#[test]
fn estimate_csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "d.csv", "mid,spr\n0,1\n1,0.5\n4,2\n");
    let target = dir.path().join("report.csv");
    let out = run(&[
        "estimate",
        &data,
        "--format",
        "csv",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(target).unwrap();
    assert!(text.contains("# theta=1.0 tol=1e-10 max_iter=1000"));
    assert!(text.contains("estimator,inf,sup,mid,spr,objective,iterations,converged,unique,final_step"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("median,") && l.contains(",true,true,")));
}

#[test]
fn negative_spread_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "bad.csv", "mid,spr\n1,-0.5\n");
    let out = run(&["estimate", &data]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "d.csv", "inf,sup\n0,1\n");
    assert_eq!(run(&["estimate", &data, "--theta", "0"]).status.code(), Some(64));
    assert_eq!(run(&["estimate", &data, "--tol", "-1"]).status.code(), Some(64));
    assert_eq!(
        run(&["estimate", &data, "--format", "xml"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(64));
    assert_eq!(run(&[]).status.code(), Some(64));
}

#[test]
fn breakdown_table_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "five.csv", "inf,sup\n1,3\n2,7\n4,5\n0,6\n3,9\n");
    let out = run(&["breakdown", &data, "--magnitudes", "1e4,1e8", "--k", "0,2,3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fsbp=0.6 (3/5)"), "{text}");
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("k,"))
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        if r[0] == 0.0 {
            assert_eq!((r[2], r[3]), (0.0, 0.0));
        }
        if r[0] == 3.0 && r[1] == 1e8 {
            assert!(r[2] > 1e3);
        }
    }

    let out = run(&[
        "breakdown",
        &data,
        "--magnitudes",
        "1e4",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["fsbp"], "0.6 (3/5)");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn breakdown_k_beyond_n_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "two.csv", "inf,sup\n0,1\n1,2\n");
    let out = run(&["breakdown", &data, "--magnitudes", "1e4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(64));
}

const SPEC: &str = r#"
mid_law = "normal(0, 1)"
spr_law = "uniform(1, 3)"
theta = 1.0
sample_sizes = [10, 100]
replications = 5
seed = 1
"#;

#[test]
fn simulate_writes_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.toml", SPEC);
    let out_dir = dir.path().join("run");
    let out = run(&["simulate", &spec, "--output", out_dir.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("truth [-2, 2] (symmetry)"));

    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["truth"]["inf"], -2.0);
    assert_eq!(summary["truth"]["sup"], 2.0);
    assert_eq!(summary["truth_provenance"], "symmetry");
    assert_eq!(summary["seed"], 1);
    assert_eq!(summary["summaries"].as_array().unwrap().len(), 2);
    let rows = fs::read_to_string(out_dir.join("rows.csv")).unwrap();
    assert_eq!(rows.lines().filter(|l| !l.starts_with('#')).count(), 1 + 10);
}

#[test]
fn simulate_seed_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.toml", SPEC);
    let read = |d: &Path| fs::read_to_string(d.join("summary.json")).unwrap();

    let a = dir.path().join("a");
    run(&["simulate", &spec, "--output", a.to_str().unwrap()]);
    let b = dir.path().join("b");
    let out = Command::new(BIN)
        .args(["simulate", &spec, "--output", b.to_str().unwrap()])
        .env("INTERVAL_ROBUST_SEED", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let c = dir.path().join("c");
    let out = Command::new(BIN)
        .args(["simulate", &spec, "--output", c.to_str().unwrap(), "--seed", "1"])
        .env("INTERVAL_ROBUST_SEED", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    assert!(read(&b).contains("\"seed\": 2"));
    assert_ne!(read(&a), read(&b));
    assert_eq!(read(&a), read(&c));

    let out = Command::new(BIN)
        .args(["simulate", &spec, "--output", c.to_str().unwrap()])
        .env("INTERVAL_ROBUST_SEED", "minus one")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn invalid_spec_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    for text in [
        SPEC.replace("[10, 100]", "[100, 10]"),
        SPEC.replace("replications = 5", "replications = 0"),
        format!("{SPEC}contamination.fraction = 0.1\n"),
        "mid_law = 3".to_string(),
    ] {
        let spec = write(dir.path(), "bad.toml", &text);
        let out = run(&["simulate", &spec, "--output", out_dir.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(64), "{text}");
    }
}
