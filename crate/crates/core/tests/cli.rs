use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const WORKED_WEIGHTS: &str = r#"{"wL": [[-1,1],[-1,1],[2,-2]], "wR": [[-4,1],[5,-5],[-1,4]]}"#;
const WORKED_CONE: &str = r#"{"A": [[1,0],[1,0],[2,-1]], "B": [[0,1],[0,1],[-1,2]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisted-flag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&["check", "--config", WORKED_WEIGHTS]), 0);
    assert_eq!(code(&["check", "--config", WORKED_CONE]), 0);
    let zero = r#"{"wL": [[0,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]}"#;
    assert_eq!(code(&["check", "--config", zero]), 1);
    assert_eq!(code(&["check", "--config", r#"{"wL": [[0,0],[0,0],[0,0]]}"#]), 2);
    assert_eq!(code(&["check", "--config", r#"{"wL": [[1,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]}"#]), 2);
    assert_eq!(code(&["check", "--config", "not json"]), 2);
    assert_eq!(code(&["check", "--config", "/nonexistent/config.json"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn inconsistent_cone_data_is_input_error() {
    let bad = r#"{"A": [[1,0],[1,0],[2,-1]], "B": [[0,1],[0,2],[-1,2]]}"#;
    assert_eq!(code(&["check", "--config", bad]), 2);
    assert_eq!(code(&["generate", "--config", WORKED_WEIGHTS]), 2);
}

#[test]
fn generate_reports_worked_weights() {
    let out = run(&["generate", "--config", WORKED_CONE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["scale"], 3);
    assert_eq!(v["results"]["rho_R"], "diag(t1^-4*t2, t1^5*t2^-5, t1^-1*t2^4)");
    assert_eq!(v["pass"], true);
}

#[test]
fn isotropy_of_non_star_system_fails() {
    let zero = r#"{"wL": [[0,0],[0,0],[0,0]], "wR": [[0,0],[0,0],[0,0]]}"#;
    assert_eq!(code(&["isotropy", "--config", zero]), 1);
    let out = run(&["isotropy", "--config", WORKED_CONE]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["freeness"]["free"], false);
}

#[test]
fn verify_rejects_bad_options() {
    assert_eq!(code(&["verify", "--config", WORKED_WEIGHTS, "--samples", "0"]), 2);
    assert_eq!(code(&["verify", "--config", WORKED_WEIGHTS, "--tol", "-1"]), 2);
    assert_eq!(code(&["cohomology", "--beta", "0,0"]), 2);
    assert_eq!(code(&["cohomology", "--beta", "1/0,1"]), 2);
}

#[test]
fn verify_is_byte_identical_on_rerun() {
    let args = ["verify", "--config", WORKED_WEIGHTS, "--samples", "30", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["results"]["summary"]["passed"], 30);
}

#[test]
fn enumerate_streams_records_then_summary() {
    let a = run(&["enumerate", "--bound", "1"]);
    let b = run(&["enumerate", "--bound", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["command"], "enumerate");
    assert_eq!(summary["results"]["count"].as_u64().unwrap() as usize, lines.len() - 1);
    for line in &lines[..lines.len() - 1] {
        let r: Value = serde_json::from_str(line).unwrap();
        assert!(r["wL"].is_array() && r["wR"].is_array());
    }
    assert_eq!(code(&["enumerate", "--bound", "-1"]), 2);
}

#[test]
fn cohomology_reports_tables() {
    let out = run(&["cohomology"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["betti"], serde_json::json!([1, 0, 0, 1, 0, 1, 0, 0, 1]));
    let degenerate = json(&run(&["cohomology", "--degenerate"]));
    assert_eq!(degenerate["results"]["hodge"]["branch"], serde_json::json!([1, 2, 1]));
}

#[test]
fn config_file_and_out_path() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let config = dir.join("worked_weights.json");
    let report = dir.join("check_report.json");
    std::fs::write(&config, WORKED_WEIGHTS).unwrap();
    let out = run(&[
        "check",
        "--config",
        config.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["results"]["condition"]["star"], true);
    assert!(v.get("wall_time_ms").is_none());
}
