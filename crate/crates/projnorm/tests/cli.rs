//! End-to-end runs of the `projnorm` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projnorm"))
        .args(args)
        .env_remove("PROJNORM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn catalog_listing_and_filters() {
    let all = run(&["catalog", "list"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(stdout(&all).lines().count(), 20);
    let c = run(&["catalog", "list", "--letter", "C"]);
    assert_eq!(stdout(&c).lines().count(), 8);
    let jordan = stdout(&run(&["catalog", "list", "--spectral", "jordan"]));
    let ids: Vec<&str> = jordan.lines().filter_map(|l| l.split_whitespace().next()).collect();
    assert_eq!(ids, ["A2", "B5", "C8", "genAII", "genBII", "genCII"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["catalog", "list", "--format", "json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 20);
}

#[test]
fn passing_check_exits_zero() {
    let o = run(&["lemma", "--name", "g1a_to_g1C", "--points", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn failing_check_exits_one() {
    // an absurdly strict tolerance turns a passing check into a failing one
    let o = run(&["lemma", "--name", "identity", "--points", "10", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--family", "C8", "--points", "10", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: FAIL"));
}

#[test]
fn excluded_parameters_exit_two_with_the_clause() {
    let o = run(&["verify", "--family", "A1", "--params", "xi=2,h=-1,eps=1,kappa=1,rho=1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("h != -eps"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--family", "Q7"],
        vec!["verify", "--family", "A1", "--points", "0"],
        vec!["lemma", "--name", "no_such_map"],
        vec!["eval", "--family", "A1", "--at", "1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["verify", "--family", "genBIII", "--points", "15", "--seed", "5", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 5);
    assert!(doc["version"].is_string());
    let checks: Vec<&str> = doc["reports"].as_array().unwrap().iter().map(|r| r["check"].as_str().unwrap()).collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted);
}

#[test]
fn environment_seed_applies_only_without_flag() {
    let base = ["lemma", "--name", "identity", "--points", "5", "--format", "json"];
    let with_env = |seed: &str, extra: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_projnorm")).args(base).args(extra).env("PROJNORM_SEED", seed).output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["config"]["seed"].as_u64().unwrap()
    };
    assert_eq!(with_env("11", &[]), 11);
    assert_eq!(with_env("11", &["--seed", "3"]), 3);
}

#[test]
fn eval_reports_the_metric() {
    let o = run(&["eval", "--family", "C8", "--at", "0.5,1.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["reports"][0]["detail"]["metric"].is_array());
}

#[test]
fn killing_exact_case_passes() {
    let o = run(&["killing", "--family", "thm3i", "--points", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
