use std::process::{Command, Output};

use framelab_core::harmonic::FrameReport;
use framelab_core::SearchReport;
use serde_json::Value;

fn framelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(args)
        .env_remove("FRAMELAB_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = framelab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn angle_values(v: &Value) -> Vec<f64> {
    v["angles"].as_array().unwrap().iter().map(|a| a["value"].as_f64().unwrap()).collect()
}

#[test]
fn classify_z6() {
    let v = json(&["classify", "--group", "Z6", "--set", "0,1,3"]);
    assert_eq!(v["schema"], 1);
    let d = &v["classification"]["divisible"];
    assert_eq!((d["n"].as_u64(), d["m"].as_u64(), d["l"].as_u64()), (Some(6), Some(3), Some(2)));
    assert_eq!((d["lambda"].as_u64(), d["mu"].as_u64()), (Some(2), Some(1)));
    let angles = angle_values(&v["frame"]);
    assert!((angles[0] - 1.0 / 3.0).abs() < 1e-12);
    assert!((angles[1] - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["frame"]["angularity"]["kind"], "btf");
}

#[test]
fn braced_and_bare_sets_agree() {
    let a = json(&["classify", "--group", "Z2xZ4", "--set", "(0,0),(1,0),(0,1)"]);
    let b = json(&["classify", "--group", "Z2xZ4", "--set", "{(0,0),(1,0),(0,1)}"]);
    assert_eq!(a, b);
    assert!(a["tags"].as_array().unwrap().iter().any(|t| t == "nested_divisible"));
}

#[test]
fn z9_has_four_angles() {
    let v = json(&["angles", "--group", "Z9", "--set", "0,1,3,4"]);
    assert_eq!(angle_values(&v).len(), 4);
    assert_eq!(v["angularity"]["d"], 4);
}

#[test]
fn frame_report_round_trips() {
    let out = framelab(&["angles", "--group", "Z13", "--set", "1,3,4,9,10,12"]);
    let text = stdout(&out);
    let report: FrameReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_value(&report).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(&text).unwrap());
}

#[test]
fn verify_exhaustion_prints_pass_lines() {
    let out = framelab(&["verify", "exhaustion-order8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() >= 5);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
    assert!(text.contains("Z2xZ4: 32"));
}

#[test]
fn verify_single_frame_modulation() {
    let out = framelab(&["verify", "modulation", "--group", "Z6", "--set", "0,1,3", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["assertions"].as_array().unwrap().len(), 1);
}

#[test]
fn search_order_eight() {
    let v = json(&[
        "search", "--order", "8", "-m", "3", "--mode", "full", "--filter", "angles=1/3,sqrt(5)/3",
    ]);
    let counts: Vec<u64> = v["reports"].as_array().unwrap().iter().map(|r| r["matched"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![0, 32, 16]);
    assert_eq!(v["total_matches"], 48);
}

#[test]
fn search_report_parses_back() {
    let out = framelab(&["search", "--group", "Z7", "-m", "3", "--filter", "etf"]);
    let report: SearchReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(report.total_subsets, 15);
    assert!(report.records.iter().all(|r| r.classification.difference_set.is_some()));
}

#[test]
fn search_writes_csv() {
    let path = std::env::temp_dir().join(format!("framelab-search-{}.csv", std::process::id()));
    let out = framelab(&[
        "search", "--group", "Z8", "-m", "3", "--mode", "full", "--filter", "btf", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(r.headers().unwrap().get(1), Some("subset"));
    let rows = r.records().count();
    std::fs::remove_file(&path).ok();
    assert!(rows > 0);
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(["search", "--group", "Z10", "-m", "4"])
        .env("FRAMELAB_JOBS", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stats"]["jobs"], 1);
}

#[test]
fn predict_divisible_flags_multiplicities() {
    let v = json(&["predict", "divisible", "--n", "6", "-m", "3", "--l", "2", "--lambda", "2", "--mu", "1"]);
    assert_eq!(v["schema"], 1);
    assert!(v["multiplicity_note"].is_string());
    let mut a = angle_values(&v);
    a.sort_by(f64::total_cmp);
    assert!((a[0] - 1.0 / 3.0).abs() < 1e-12 && (a[1] - 3f64.sqrt() / 3.0).abs() < 1e-12);
}

#[test]
fn gauss_lists_every_unit() {
    let v = json(&["gauss", "--p", "13"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    assert!(entries.iter().all(|e| e["gauss_deviation"].as_f64().unwrap() < 1e-9));
    assert_eq!(v["quartic_cosets"]["generator"], 2);
}

#[test]
fn tables_csv_all_pass() {
    let out = framelab(&["tables"]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let status = r.headers().unwrap().iter().position(|h| h == "status").unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 40);
    assert!(rows.iter().all(|row| &row[status] == "passed"));
}

#[test]
fn exit_codes() {
    assert_eq!(framelab(&["classify", "--group", "Z6", "--set", "0,1,3", "--bogus"]).status.code(), Some(2));
    assert_eq!(framelab(&["classify", "--group", "Y6", "--set", "0"]).status.code(), Some(2));
    assert_eq!(framelab(&["classify", "--group", "Z6", "--set", "0,7"]).status.code(), Some(2));
    assert_eq!(framelab(&["predict", "divisible", "--n", "6"]).status.code(), Some(2));
    assert_eq!(framelab(&["verify", "no-such-suite"]).status.code(), Some(2));
    // Well-formed requests the mathematics rejects.
    assert_eq!(framelab(&["gauss", "--p", "15"]).status.code(), Some(1));
    assert_eq!(framelab(&["predict", "divisible", "--n", "6", "-m", "3", "--l", "4", "--lambda", "2", "--mu", "1"]).status.code(), Some(1));
    assert_eq!(framelab(&["search", "--group", "Z64", "-m", "20", "--mode", "full"]).status.code(), Some(1));
    assert_eq!(framelab(&["--help"]).status.code(), Some(0));
}
