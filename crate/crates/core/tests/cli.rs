use std::process::Command;

use ringgroom::cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("ringgroom").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = call(&full);
    assert_eq!(code, EXIT_OK, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    let (code, out) = call(&["construct", "--n", "11", "--v", "8", "--cprime", "3", "--mon", "-o", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("valid true"), "{out}");
    let report = json(&["verify", p]);
    assert_eq!(report["valid"], true);
    let cost = json(&["cost", "--n", "11", "--v", "8", "--cprime", "3"]);
    assert_eq!(report["drop_cost"], cost["cost"]);
    assert_eq!(report["wavecost"], cost["wavecost"]);
}

#[test]
fn verify_rejects_a_tampered_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    assert_eq!(call(&["construct", "--n", "7", "--v", "5", "--cprime", "2", "-o", p]).0, EXIT_OK);
    let mut d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    d["wavelengths"].as_array_mut().unwrap().pop();
    std::fs::write(&path, d.to_string()).unwrap();
    let (code, out) = call(&["verify", p]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.starts_with("invalid"), "{out}");
}

#[test]
fn example_values() {
    assert_eq!(json(&["cost", "--n", "7", "--v", "5", "--cprime", "2"])["cost"], 22);
    assert_eq!(json(&["cost", "--n", "7", "--v", "5", "--cprime", "1"])["cost"], 26);
    assert_eq!(json(&["bounds", "--v", "11", "--w", "2"])["triangle_bound"]["delta_min"], 2);
    let o = json(&["oracle", "--n", "7", "--v", "4", "--cprime", "2"]);
    assert_eq!(o["optimum_cost"], 21);
}

#[test]
fn table_check_passes() {
    let (code, out) = call(&["table", "--n-min", "5", "--n-max", "10", "--cprime", "1,3", "--check"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn fixtures_listed_and_checked() {
    let (code, out) = call(&["fixture", "--list"]);
    assert_eq!(code, EXIT_OK);
    let names: Vec<&str> = out.lines().collect();
    assert!(!names.is_empty());
    for name in names {
        assert_eq!(call(&["fixture", name]).0, EXIT_OK, "{name}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["cost", "--n", "5", "--v", "9", "--cprime", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["cost", "--n", "5", "--v", "3", "--cprime", "4"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["fixture", "no-such-fixture"]).0, EXIT_USAGE);
    assert_eq!(call(&["oracle", "--n", "12", "--v", "3", "--cprime", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ringgroom");
    let ok = Command::new(bin).args(["cost", "--n", "8", "--v", "4", "--cprime", "2"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("cost"));
    let bad = Command::new(bin).args(["cost", "--n", "4", "--v", "8", "--cprime", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn designkit_outputs_parse() {
    for args in [
        &["designkit", "sts", "--v", "9"][..],
        &["designkit", "cocktail", "--w", "6"][..],
        &["designkit", "factorization", "--m", "7"][..],
    ] {
        let v = json(args);
        assert!(!v.is_null(), "{args:?}");
    }
}
