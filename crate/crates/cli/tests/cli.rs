use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn germ(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../germs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germinv")).args(args).output().expect("binary runs")
}

fn run_on(args: &[&str], files: &[&str]) -> Output {
    let paths: Vec<String> = files.iter().map(|f| germ(f).display().to_string()).collect();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(paths.iter().map(String::as_str));
    run(&all)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("germinv-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn report_c5() {
    let out = run_on(&["--json", "report"], &["C5.germ"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["label"], "C5");
    assert_eq!(v["qh_type"], "(1,4,7;1,2)");
    assert_eq!(v["fd"], "FD");
    assert_eq!(v["invariants"]["C"], 5);
    assert_eq!(v["invariants"]["T"], 0);
    assert_eq!(v["invariants"]["ae_codim"], 5);
    assert_eq!(v["invariants"]["mu_D"], 6);
    assert_eq!(v["invariants"]["m_image"], 2);
    assert_eq!(v["slice"]["mu_W"], 13);
    assert_eq!(v["inconsistencies"].as_array().unwrap().len(), 0);
}

#[test]
fn report_text_mentions_milnor_number() {
    let out = run_on(&["report"], &["C5.germ"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("13"), "{text}");
}

#[test]
fn nonreduced_double_point_curve() {
    let out = run_on(&["--json", "report"], &["nonreduced.germ"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["fd"], "NonReducedD");
    assert_eq!(v["lambda"], "x^2");
    assert!(v["invariants"]["ae_codim"].is_null());
}

#[test]
fn corank_two_gives_partial_report() {
    let out = run_on(&["--json", "report"], &["double-fold.germ"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["corank"], 2);
    assert!(v["lambda"].is_null());
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn inconsistency_exits_two() {
    let out = run_on(&["--json", "report"], &["corank2-mismatch.germ"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["inconsistencies"][0]["code"], "multiplicity_mismatch");
}

#[test]
fn compare_scaled_copy() {
    let out = run_on(&["--json", "compare"], &["C5.germ", "C5-scaled.germ"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["labels"][1], "C5-scaled");
    assert_eq!(v["profiles"][0], v["profiles"][1]);
}

#[test]
fn family_samples() {
    let out = run_on(&["--json", "family", "--samples", "0,1,-2,1/3"], &["C5-family.germ"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 4);
    assert_eq!(samples[2]["t"], "-2");
    assert!(samples.iter().all(|s| s["mu_W"] == 13));

    let out = run_on(&["--json", "family", "--samples", "0,1"], &["breaks-at-zero.germ"]);
    let v = json(&out);
    assert_eq!(v["samples"][0]["fd"], "NonReducedD");
    assert_eq!(v["samples"][1]["fd"], "FD");
}

#[test]
fn corpus_passes_and_is_deterministic() {
    let a = run(&["--json", "corpus"]);
    let b = run(&["--json", "corpus"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn report_json_is_byte_identical_across_runs() {
    let a = run_on(&["--json", "--seed", "7", "report"], &["S1.germ"]);
    let b = run_on(&["--json", "--seed", "7", "report"], &["S1.germ"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["report", "/nonexistent/germ.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn syntax_error_reports_position() {
    let path = temp_file("bad.germ", "vars: x y\nmap: (x, y^2, x*y +)\n");
    let out = run(&["report", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2, f3 column 6"), "{}", stderr(&out));
}

#[test]
fn bad_samples_and_misused_files() {
    let out = run_on(&["family", "--samples", "1,abc"], &["C5-family.germ"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("abc"));

    let out = run_on(&["report"], &["C5-family.germ"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_on(&["family", "--samples", "1"], &["C5.germ"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--max-colength", "1", "corpus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
