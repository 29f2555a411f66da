//! End-to-end tests of the command-line binary: subcommand behavior, schema
//! dispatch, exit codes, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tenspec"))
}

fn write(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

const MIXED_MATRIX: &str =
    r#"{"rows": 3, "cols": 3, "data": [[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[4,0]]}"#;

#[test]
fn drazin_command_reports_index_and_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", MIXED_MATRIX);
    let out = run(&["drazin", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["index"], 2);
    assert_eq!(v["core_rank"], 1);
    // The Drazin inverse of diag(J2(0), [4]) is diag(0, 0, 1/4).
    assert_eq!(v["drazin"]["data"][8][0], 0.25);
    assert!(v["residuals"]["power"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn classify_dispatches_on_schema() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", MIXED_MATRIX);
    let d = write(
        dir.path(),
        "d.json",
        r#"{"points": [{"value": [2,0], "tag": "pole", "order": 1}]}"#,
    );

    let out = run(&["classify", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "matrix_classification");
    let points = v["classification"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0]["value"][0], 0.0);
    assert_eq!(points[0]["order"], 2);
    assert_eq!(points[1]["value"][0], 4.0);

    let out = run(&["classify", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "descriptor");
    assert_eq!(v["invertible"], true);
}

#[test]
fn invalid_descriptor_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(
        dir.path(),
        "bad.json",
        r#"{"points": [{"value": [1,0], "tag": "acc", "order": 3}]}"#,
    );
    let out = run(&["classify", d.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn malformed_and_missing_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "garbage.json", "not json at all");
    let out = run(&["drazin", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["drazin", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let wrong = write(dir.path(), "schema.json", r#"{"what": 1}"#);
    let out = run(&["classify", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonsquare_matrix_for_drazin_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "rect.json",
        r#"{"rows": 1, "cols": 2, "data": [[1,0],[2,0]]}"#,
    );
    let out = run(&["drazin", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tensor_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"points": [{"value": [1,0], "tag": "pole", "order": 1}]}"#,
    );
    let b = write(
        dir.path(),
        "b.json",
        r#"{"points": [{"value": [0,0], "tag": "acc"}, {"value": [1,0], "tag": "pole", "order": 1}]}"#,
    );
    let first = run(&["tensor", a.to_str().unwrap(), b.to_str().unwrap()]);
    let second = run(&["tensor", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let v = stdout_json(&first);
    assert_eq!(v["kind"], "tensor");
    assert_eq!(v["zero"]["status"], "ACC");
    assert_eq!(v["equality_holds"], true);
}

#[test]
fn tensor_rejects_invalid_descriptor_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"points": [{"value": [1,0], "tag": "pole", "order": 1}]}"#,
    );
    let bad = write(dir.path(), "bad.json", r#"{"points": []}"#);
    let out = run(&["tensor", a.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn elementary_command_checks_product_law() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[2,0]]}"#,
    );
    let t = write(dir.path(), "t.json", r#"{"rows": 1, "cols": 1, "data": [[3,0]]}"#);
    let out = run(&["elementary", s.to_str().unwrap(), t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["spectrum_matched"], true);
    assert_eq!(v["form_index"], 0);
    assert_eq!(v["prediction"]["kind"], "elementary");
    let ops = v["operator_spectrum"].as_array().unwrap();
    assert_eq!(ops.len(), 2);
}

#[test]
fn verify_command_emits_reports_and_summary() {
    let out = run(&[
        "verify", "--suite", "symbolic", "--trials", "25", "--seed", "11",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 26); // 25 reports + 1 summary
    let summary: serde_json::Value = serde_json::from_str(lines[25]).unwrap();
    assert_eq!(summary["suite"], "symbolic");
    assert_eq!(summary["trials"], 25);
    assert_eq!(summary["failed"], 0);
    let report: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(report["trial_id"], 0);
    assert_eq!(report["kind"], "symbolic_consistency");
    assert_eq!(report["passed"], true);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "nope", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_overrides_are_accepted_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", MIXED_MATRIX);
    let out = run(&[
        "drazin",
        m.to_str().unwrap(),
        "--tol-res",
        "1e-6",
        "--tol-rank",
        "1e-9",
        "--tol-eig",
        "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["tolerances"]["residual_rel"], 1e-6);
    assert_eq!(v["tolerances"]["rank_rel"], 1e-9);

    let out = run(&["drazin", m.to_str().unwrap(), "--tol-res", "-1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_prints_human_readable_lines() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", MIXED_MATRIX);
    let out = run(&["classify", m.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pole"));
    assert!(text.contains("order 2"));
}
