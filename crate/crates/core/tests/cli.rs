//! End-to-end runs of the `k2lambda` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k2lambda")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("k2lambda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_json_is_deterministic_and_passes() {
    let args = ["verify", "--format", "json", "--suite", "fpab-core", "--suite", "ms-k2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn negative_control_fails_with_witness() {
    let o = run(&["verify", "--suite", "negative-control"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && text.contains("commutes=false"), "{text}");
}

#[test]
fn params_without_q_above_two_are_rejected() {
    let cfg = scratch("bad.toml", "params = [{ p = 2, e = 1, m = 1 }]\n");
    let o = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("params[0]") && err.contains("q>2"), "{err}");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let cfg = scratch("typo.toml", "sede = 3\n");
    let o = run(&["report", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_for_integers_at_three() {
    let cfg = scratch(
        "z3.toml",
        "params = [{ p = 3, e = 1, m = 1 }]\nrings = [{ kind = \"integers\" }]\nformat = \"json\"\n",
    );
    let o = run(&["report", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let case = &v["cases"][0];
    assert_eq!(case["tc_total"]["torsion"], serde_json::json!(["3"]));
    assert_eq!(case["tc_to_fp"]["iso"], true);
}

#[test]
fn empty_catalog_gives_empty_report() {
    let cfg = scratch("empty.toml", "rings = []\nformat = \"json\"\n");
    let o = run(&["report", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cases"], serde_json::json!([]));
}

#[test]
fn snf_reads_json_and_csv() {
    let json = scratch("m.json", "[[2, 4], [6, 8]]");
    let csv = scratch("m.csv", "2,4\n6,8\n");
    let a = run(&["snf", json.to_str().unwrap(), "--format", "json"]);
    let b = run(&["snf", csv.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
    let empty = scratch("empty.json", "[]");
    let o = run(&["snf", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn snf_parse_error_exits_two() {
    let bad = scratch("bad.csv", "1,2\n3,x\n");
    let o = run(&["snf", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
