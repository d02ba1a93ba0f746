use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dihedrant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dihedrant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_unit_rotation() {
    let out = dihedrant(&["--no-timings", "classify", "n=12; S=family(thm14, p=3, pi=1)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"]["case"], "CaseV");
    assert_eq!(v["classification"]["arc_transitive"], true);
    assert_eq!(v["aut_order"].to_string(), r#"{"2":17,"3":2,"5":1}"#);
    assert_eq!(v["transitivity"]["two_arc"], false);
    assert!(v["timings"].is_null());
}

#[test]
fn raw_inserts_inverses() {
    let v = json(&dihedrant(&["--no-timings", "classify", "n=6; S=raw(r1)"]));
    assert_eq!(v["input"]["S"], serde_json::json!(["r1", "r5"]));
    assert_eq!(v["classification"]["case"], "Disconnected");
}

#[test]
fn output_is_deterministic() {
    let args = ["--no-timings", "classify", "n=10; S=family(knn_minus_matching_v2)"];
    let a = dihedrant(&args);
    let b = dihedrant(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["classification"]["case"], "CaseII");
}

#[test]
fn timings_present_by_default() {
    let v = json(&dihedrant(&["invariants", "n=5; S=classes(f1)"]));
    assert_eq!(v["invariants"]["recognized"]["kind"], "CompleteBipartite");
    let v = json(&dihedrant(&["aut", "n=5; S=classes(f1)"]));
    assert!(v["timings"]["total_ms"].is_number());
    assert_eq!(v["aut_order"].to_string(), r#"{"2":7,"3":2,"5":2}"#);
}

#[test]
fn exit_codes() {
    let parse = dihedrant(&["classify", "n=6; S=raw(q1)"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("byte 11"));
    assert_eq!(dihedrant(&["verify", "thm15"]).status.code(), Some(2));
    assert_eq!(dihedrant(&["verify", "thm14", "--p", "4"]).status.code(), Some(2));
    let capped = dihedrant(&["--node-cap", "1", "classify", "n=12; S=family(thm14, p=3)"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(dihedrant(&["scan", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn verify_reports_each_check() {
    let out = dihedrant(&["--no-timings", "verify", "cor12", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 2);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn quotient_of_unit_rotation() {
    let v = json(&dihedrant(&["quotient", "n=20; S=family(thm14, p=5)"]));
    assert_eq!(v["quotient"]["recognized"]["kind"], "CompleteBipartiteMinusMatching");
    assert_eq!(v["quotient"]["multiplicity"], 2);
    assert_eq!(v["cells"][0], serde_json::json!(["r0", "r10"]));
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let out = dihedrant(&[
        "--format",
        "text",
        "--no-timings",
        "--out",
        path.to_str().unwrap(),
        "classify",
        "n=6; S=family(complete)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("classification.case") && l.ends_with("CaseIII")));
}

#[test]
fn scan_resumes_without_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(dihedrant(&["--jobs", "2", "scan", "--n", "12", "--out", p]).status.code(), Some(0));
    let full = fs::read_to_string(&path).unwrap();
    assert_eq!(full.lines().count(), 6);

    // keep two records plus half of a third, as after a crash
    let lines: Vec<&str> = full.lines().collect();
    let partial = format!("{}\n{}\n{}", lines[0], lines[1], &lines[2][..10]);
    fs::write(&path, partial).unwrap();
    assert_eq!(dihedrant(&["scan", "--n", "12", "--out", p]).status.code(), Some(0));
    let resumed = fs::read_to_string(&path).unwrap();
    assert_eq!(resumed, full);

    assert_eq!(dihedrant(&["scan", "--n", "12", "--out", p]).status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap(), full);
}

#[test]
fn scan_to_stdout() {
    let out = dihedrant(&["scan", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["arc_transitive"] == false && r["girth"] == 4));
}
