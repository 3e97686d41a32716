use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvlattice")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().expect("exit code"), v)
}

fn checks(v: &Value) -> Vec<(String, bool)> {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["check"].as_str().unwrap().to_string(), x["pass"].as_bool().unwrap()))
        .collect()
}

#[test]
fn derivations_have_dimension_zero() {
    let (code, v) = run_json(&["ops", "derivations", "--atoms", "4"]);
    assert_eq!(code, 0);
    assert!(checks(&v).contains(&("dimension=0".to_string(), true)));
    assert_eq!(v["output"]["equations"], 64);
}

#[test]
fn empty_is_in_one() {
    let (code, v) = run_json(&["bvu", "eval", "--env", &fixture("hf_env.json"), "--formula", "empty in one"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["truth"]["atoms"], serde_json::json!([0, 1]));
}

#[test]
fn eval_infers_atoms_and_reports_witness() {
    let (code, v) = run_json(&["bvu", "eval", "--env", &fixture("mixed_env.json"), "--formula", "exists t in x : t = zero"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["atoms"], 1);
    assert_eq!(v["output"]["witness"]["dom_index"], 0);
    let (_, v) = run_json(&[
        "bvu", "eval", "--env", &fixture("mixed_env.json"), "--atoms", "3", "--formula", "exists t in x : t = zero",
    ]);
    assert_eq!(v["output"]["truth"]["atoms"], serde_json::json!([0]));
}

#[test]
fn refine_fixture() {
    let (code, v) = run_json(&["refine", "--covers", &fixture("covers.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["g"]["coords"], serde_json::json!(["0/1", "1/9", "1/3", "4/9"]));
    assert!(checks(&v).iter().all(|(_, pass)| *pass));
}

#[test]
fn continued_fractions() {
    let (_, v) = run_json(&["cf", "expand", "--value", "16/45"]);
    assert_eq!(v["output"], serde_json::json!({"preperiod": [2, 1, 4, 3], "period": []}));
    let (_, v) = run_json(&["cf", "expand", "--surd", "-2,1,1,7"]);
    assert_eq!(v["output"]["period"], serde_json::json!([1, 1, 1, 4]));
    let (code, v) = run_json(&["cf", "convergent", "--surd", "-1,1,1,2", "--k", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["convergent"], "70/169");
}

#[test]
fn operator_classification() {
    let (_, v) = run_json(&["ops", "classify", "--matrix", &fixture("diagonal.json")]);
    assert_eq!(v["output"]["multiplier"]["coords"], serde_json::json!(["2/1", "-1/3", "5/1"]));
    let (_, v) = run_json(&["ops", "classify", "--matrix", &fixture("shear.json")]);
    assert_eq!(v["output"]["band_preserving"], false);
    let (_, v) = run_json(&["ops", "classify", "--matrix", &fixture("projection_complex.json")]);
    assert_eq!(v["output"]["endomorphism"]["verdict"], "band-projection");
    assert_eq!(v["output"]["automorphism"]["verdict"], "not-bijective");
    let (_, v) = run_json(&["bilinear", "classify", "--tensor", &fixture("tensor_antisymmetric.json")]);
    assert_eq!(v["output"]["separately_band_preserving"], false);
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn pseudo_intersection_of_custom_chain() {
    let (code, v) = run_json(&["pnfin", "pi", "--chain", &fixture("chain.json"), "--count", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["values"], serde_json::json!(["3", "9", "27", "81"]));
    assert!(checks(&v).contains(&("tail pairs checked=10".to_string(), true)));
}

#[test]
fn input_errors_exit_two_with_position() {
    let (code, v) = run_json(&["refine", "--covers", &fixture("malformed.json")]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("line 3 column 1"), "{v}");

    let (code, v) = run_json(&["bvu", "eval", "--env", &fixture("hf_env.json"), "--formula", "empty in (one"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("byte 9"), "{v}");

    let bad: PathBuf = std::env::temp_dir().join("bvlattice-bad-matrix.json");
    std::fs::write(&bad, r#"[["1", "x"], ["0", "1"]]"#).unwrap();
    let (code, v) = run_json(&["ops", "classify", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("[0][1]"), "{v}");

    assert_eq!(run(&["ops", "frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "gordon", "--atoms", "17"]).status.code(), Some(2));
    assert_eq!(run(&["cf", "expand", "--value", "3/2"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "--seed", "7", "lattice", "gordon", "--atoms", "5", "--trials", "50"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["inputs"].as_str().unwrap().len(), 64);
}

#[test]
fn battery_and_small_suite_pass() {
    let (code, v) = run_json(&["bvu", "transfer", "--battery"]);
    assert_eq!(code, 0);
    assert!(checks(&v).len() >= 20);
    let (code, v) = run_json(&["suite", "all", "--trials", "10"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(checks(&v).len(), 13);
}
