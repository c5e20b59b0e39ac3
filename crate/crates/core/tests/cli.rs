mod common;

use std::path::Path;
use std::process::{Command, Output};

use dg_triangular::format::parse;

use common::fixture_dir;

fn dgtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgtri")).args(args).output().unwrap()
}

fn input(stem: &str) -> String {
    fixture_dir().join(format!("{stem}.json")).to_str().unwrap().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn shipped_fixtures_pass() {
    for stem in ["kkk", "exterior", "nonzero_differential", "koszul"] {
        for cmd in ["validate", "check-equivalence"] {
            let out = dgtri(&[cmd, "--input", &input(stem)]);
            assert_eq!(code(&out), 0, "{cmd} {stem}: {}", String::from_utf8_lossy(&out.stderr));
            let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(report["passed"], true);
        }
    }
}

#[test]
fn negative_controls_exit_one() {
    let out = dgtri(&["validate", "--input", &input("negative/associativity")]);
    assert_eq!(code(&out), 1);
    let out = dgtri(&["check-equivalence", "--input", &input("negative/lambda_sign")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("equivalence not attempted"));
}

#[test]
fn parse_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": \"Q\", \"extra\": 1}").unwrap();
    let out = dgtri(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    let out = dgtri(&["validate", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn narrow_degree_window_is_refused() {
    let out = dgtri(&["check-equivalence", "--input", &input("exterior"), "--degree-window", "0:0"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let out = dgtri(&["check-equivalence", "--input", &input("exterior"), "--degree-window", "-6:6"]);
    assert_eq!(code(&out), 0);
    let out = dgtri(&["check-equivalence", "--input", &input("exterior"), "--degree-window", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn wall_time_stays_off_stdout() {
    let out = dgtri(&["validate", "--input", &input("kkk")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall time"));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("wall time"));
}

#[test]
fn seeds_do_not_change_verdicts() {
    for seed in ["0", "1", "99"] {
        let out = dgtri(&["check-equivalence", "--input", &input("koszul"), "--seed", seed]);
        assert_eq!(code(&out), 0);
    }
}

fn round_trip(args: &[&str], path: &Path) -> dg_triangular::format::Document {
    let mut full = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    let out = dgtri(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let again = dgtri(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&again), 0, "{}", String::from_utf8_lossy(&again.stderr));
    doc
}

#[test]
fn constructions_emit_valid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let ext = input("exterior");
    let op = round_trip(&["oppose", "--input", &ext], &dir.path().join("op.json"));
    assert!(op.categories.iter().any(|c| c.name.ends_with("^op")));
    let t = round_trip(&["tensor", "--input", &ext], &dir.path().join("t.json"));
    assert!(t.categories.iter().any(|c| c.name.contains('⊗')));
    let l = round_trip(&["lambda", "--input", &input("kkk")], &dir.path().join("l.json"));
    let lam = l.categories.iter().find(|c| c.name.starts_with("Lambda")).unwrap();
    assert_eq!(lam.len(), 4);
}
