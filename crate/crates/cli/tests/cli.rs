use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use symqca::index::IndexValue;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn symqca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symqca")).args(args).env_remove("SYMQCA_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn index_of_kw_is_sqrt_two() {
    let out = symqca(&["index", "--qca", &data("kw_z2.qca"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["index"], serde_json::json!({ "2": 1 }));
    assert_eq!(v["invariant"], Value::Bool(true));
    assert_eq!(v["placements"].as_array().unwrap().len(), 5);
    let parsed: IndexValue = serde_json::from_value(v["index"].clone()).unwrap();
    assert_eq!(parsed, IndexValue::from_doubled([(2, 1)]));
}

#[test]
fn explicit_placements() {
    let kw = data("kw_z2.qca");
    let out = symqca(&["index", "--qca", &kw, "--pair", "0:7,4:11", "--pair", "-20:-8,-12:0", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["placements"].as_array().unwrap().len(), 2);
    let bad = symqca(&["index", "--qca", &kw, "--pair", "0:3,1:4", "--json"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(json(&bad)["error"]["kind"], "geometry");
}

#[test]
fn d1_is_equivalent_to_inverse_translation_times_d2() {
    let out = symqca(&["equiv", "--a", &data("d1.qca"), "--b", &data("t_inv_d2.qca"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equivalent"], Value::Bool(true));
    let text = symqca(&["equiv", "--a", &data("d1.qca"), "--b", &format!("{}#d2", data("t_inv_d2.qca"))]);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("equivalent: false"));
}

#[test]
fn broken_definition_fails_validation() {
    let out = symqca(&["validate", "--qca", &data("broken.qca"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], Value::Bool(false));
    let failures = v["report"]["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| !f["partner"].is_null()));
    let idx = symqca(&["index", "--qca", &data("broken.qca"), "--json"]);
    assert_eq!(idx.status.code(), Some(1));
    assert_eq!(json(&idx)["error"]["kind"], "invalid_qca");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(symqca(&["frobnicate"]).status.code(), Some(2));
    let out = symqca(&["index", "--qca", "/nonexistent.qca", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "io");
    assert!(v["error"]["message"].is_string());
    let out = symqca(&["oracle", "--check", "nothing", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn anyons_report_for_d2() {
    let out = symqca(&["anyons", "--qca", &format!("{}#d2", data("t_inv_d2.qca")), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ty_conditions"]["gamma_injective"], Value::Bool(true));
    assert_eq!(v["ty_conditions"]["square_trivial"], Value::Bool(true));
    assert!(v["boson_table"].is_object());
    assert_eq!(v["bicharacter"]["symmetric"], Value::Bool(true));
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["validate", "--qca", &data("d1.qca")[..], "--json"],
        vec!["anyons", "--qca", &data("kw_z2.qca")[..], "--json"],
        vec!["oracle", "--check", "eta", "--sites", "6", "--json"],
    ] {
        let out = symqca(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again);
    }
}

#[test]
fn oracle_is_deterministic_given_seed() {
    let args = ["oracle", "--check", "algebra", "--group", "2,2", "--sites", "3", "--seed", "17", "--json"];
    let a = symqca(&args);
    let b = symqca(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_symqca"))
        .args(&args[..args.len() - 3])
        .arg("--json")
        .env("SYMQCA_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn every_oracle_check_passes() {
    let out = symqca(&["oracle", "--check", "all", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    for k in ["algebra", "choi", "eta", "fermion", "q8"] {
        assert!(v[k].is_object(), "{k}");
    }
    assert_eq!(v["q8"]["passed"], Value::Bool(true));
}
