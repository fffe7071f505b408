use std::process::{Command, Output};

use serde_json::Value;

fn sclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sclab")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_thm1_json_record() {
    let out = sclab(&["verify", "--claim", "thm1", "--p", "7", "--r", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let rec: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec["pass"], Value::Bool(true));
    assert!(rec["witness_valuation"].as_i64().unwrap() >= 4);
    let keys: Vec<&str> = rec.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = sclab::render::CONGRUENCE_HEADERS.to_vec();
    expected.sort_unstable();
    assert_eq!(keys, expected);
    // The raw line keeps the schema order.
    let positions: Vec<usize> = sclab::render::CONGRUENCE_HEADERS
        .iter()
        .map(|h| text.find(&format!("\"{h}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn scan_d2_csv_has_one_row_per_prime_from_five() {
    let out = sclab(&["scan", "--claim", "d2", "--pmax", "23", "--format", "csv", "--test-mode"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, sclab::render::CONGRUENCE_HEADERS);
    let primes: Vec<u64> = reader.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert_eq!(primes, [5, 7, 11, 13, 17, 19, 23]);
}

#[test]
fn identity_fuzzing_is_reproducible_per_seed() {
    let args = ["identity", "--name", "km", "--trials", "50", "--seed", "42", "--format", "json"];
    let a = sclab(&args);
    let b = sclab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 50);
    let other = sclab(&["identity", "--name", "km", "--trials", "50", "--seed", "43", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn scan_output_does_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str| {
        let path = dir.path().join(format!("scan-{workers}.jsonl"));
        let out = sclab(&[
            "scan", "--claim", "thm2", "--pmax", "31", "--format", "json", "--test-mode", "--workers", workers,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("8"));
}

#[test]
fn workers_default_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sclab"))
        .args(["scan", "--claim", "lr3", "--pmax", "13", "--test-mode", "--format", "csv"])
        .env("SCLAB_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_sclab"))
        .args(["scan", "--claim", "lr3", "--pmax", "13"])
        .env("SCLAB_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--claim", "lr3", "--p", "7", "--exponent", "4"],
        vec!["verify", "--claim", "thm1", "--p", "7"],
        vec!["verify", "--claim", "thm2", "--p", "11", "--r", "-1"],
        vec!["verify", "--claim", "nope", "--p", "7"],
        vec!["scan", "--claim", "lr3", "--pmin", "20", "--pmax", "10"],
        vec!["proofchain", "--claim", "d2", "--p", "7", "--r", "1"],
        vec!["frobnicate"],
    ] {
        let out = sclab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn failures_exit_one_and_are_labelled() {
    let out = sclab(&["qverify", "--p", "7", "--r", "1", "--shift", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"verdict\":\"conjecture violated\""));
    let held = sclab(&["qverify", "--p", "7", "--r", "1"]);
    assert_eq!(held.status.code(), Some(0));
}

#[test]
fn lowered_exponent_is_reported() {
    let out = sclab(&["verify", "--claim", "conj3", "--p", "7", "--r", "1", "--exponent", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(rec["modulus_exponent"], Value::from(2));
}

#[test]
fn fixed_families_report_null_r() {
    let out = sclab(&["verify", "--claim", "lr3", "--p", "5", "--format", "json", "--test-mode"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(rec["r"], Value::Null);
    assert_eq!(rec["elapsed_ms"], Value::from(0));
    assert!(rec["lhs_residue"].is_string());
}

#[test]
fn proof_chain_text_report() {
    let out = sclab(&["proofchain", "--claim", "thm1", "--p", "7", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("karlsson-minton-vanishing"));
    assert_eq!(text.lines().count(), 12);
}
