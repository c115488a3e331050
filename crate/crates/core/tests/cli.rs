use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcc")).args(args).env_remove("RC_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_ops(dir: &Path, name: &str, matrices: Value) -> PathBuf {
    let m = matrices.as_array().unwrap().len();
    let d = matrices[0].as_array().unwrap().len();
    let path = dir.join(name);
    let body = serde_json::json!({ "m": m, "d": d, "matrices": matrices });
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn pauli_pair(dir: &Path) -> PathBuf {
    write_ops(
        dir,
        "pair.json",
        serde_json::json!([
            [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
            [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]
        ]),
    )
}

fn entry(v: &Value, i: usize, j: usize) -> (f64, f64) {
    let z = &v["result"]["matrix"][i][j];
    (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())
}

#[test]
fn quantize_anticommuting_pair_is_zero() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["quantize", "x1 x2", ops.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["schema"], "rcc-report/1");
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(entry(&v, i, j), (0.0, 0.0));
        }
    }
    assert!(stderr(&out).contains("hermitian residual"));
}

#[test]
fn quantize_square_of_sigma_x_is_identity() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["quantize", "x1^2 + 3", ops.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(entry(&v, 0, 0), (4.0, 0.0));
    assert_eq!(entry(&v, 0, 1), (0.0, 0.0));
    assert_eq!(entry(&v, 1, 1), (4.0, 0.0));
}

#[test]
fn quantize_parse_error_reports_position() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["quantize", "x1^", ops.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('3'), "{}", stderr(&out));
}

#[test]
fn missing_operator_file_exits_two() {
    let out = rcc(&["quantize", "x1", "/nonexistent/ops.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_hermitian_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let ops = write_ops(dir.path(), "bad.json", serde_json::json!([[[[0, 0], [1, 0]], [[0, 0], [0, 0]]]]));
    let out = rcc(&["quantize", "x1", ops.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn calculus_routes_agree_on_pauli_pair() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["calculus", ops.to_str().unwrap(), "--poly", "1 + x1 x2 - 0.5 x2^3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(v["diagnostics"]["relative_disagreement"].as_f64().unwrap() <= 1e-6);
    assert!(v["result"]["taylor"].is_object());
    assert!(v["result"]["integral"]["diagnostics"]["nodes"].as_u64().unwrap() > 0);
    assert!(stderr(&out).contains("route disagreement"));
}

#[test]
fn calculus_rejects_radius_inside_spectrum() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["calculus", ops.to_str().unwrap(), "--poly", "x1", "--route", "integral", "--radius", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("radius below spectral bound"), "{}", stderr(&out));
}

#[test]
fn calculus_requires_a_source() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    assert_eq!(rcc(&["calculus", ops.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn probe_zero_tuple_converges() {
    let dir = TempDir::new().unwrap();
    let ops = write_ops(
        dir.path(),
        "zero.json",
        serde_json::json!([[[[0, 0], [0, 0]], [[0, 0], [0, 0]]], [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]]),
    );
    let out = rcc(&["probe", ops.to_str().unwrap(), "--direction", "1,0,0", "--radii", "1,2", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("radius,degree,term_norm,partial_norm,verdict"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",converging")), "{text}");
}

#[test]
fn probe_rejects_zero_direction() {
    let dir = TempDir::new().unwrap();
    let ops = pauli_pair(dir.path());
    let out = rcc(&["probe", ops.to_str().unwrap(), "--direction", "0,0,0", "--radii", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sphere_rule_weights_sum_to_area() {
    let out = rcc(&["sphere-rule", "--n", "2", "--radius", "2", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let total: f64 = v["weights"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).sum();
    assert!((total - 16.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn verify_seed_flag_beats_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rcc"));
        cmd.args(["verify", "--suite", "algebra"]).args(args);
        match env {
            Some(s) => cmd.env("RC_SEED", s),
            None => cmd.env_remove("RC_SEED"),
        };
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        json(&out)["config"]["config"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 7);
    assert_eq!(run(Some("11"), &[]), 11);
    assert_eq!(run(Some("11"), &["--seed", "5"]), 5);
}

#[test]
fn verify_out_file_and_timing() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = rcc(&["verify", "--suite", "algebra", "--timing", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["wall_time_s"].as_f64().is_some());
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn verify_impossible_tolerance_fails() {
    let out = rcc(&["verify", "--suite", "quantization", "--tol", "nonassociativity_witness=10"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rcc(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(rcc(&["verify", "--tol", "oops"]).status.code(), Some(2));
    assert_eq!(rcc(&[]).status.code(), Some(2));
}
