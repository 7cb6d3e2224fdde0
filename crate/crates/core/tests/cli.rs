use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gclose(args: &[&str]) -> Output {
    gclose_env(args, &[])
}

fn gclose_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gclose"));
    cmd.args(args).env_remove("GCLOSE_DIM_CAP").env_remove("GCLOSE_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn gclose")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gclose-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn closure_of_mat3() {
    let out = gclose(&["closure", "--preset", "matrix:3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["closure_dim"], 27);
    assert_eq!(v["ambient_dim"], 729);
    assert_eq!(v["characters"]["2,1"], "-9");
    assert!(v.get("actions").is_none());
}

#[test]
fn bare_preset_takes_n() {
    let out = gclose(&["closure", "--preset", "split", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["closure_dim"], 6);
}

#[test]
fn dump_actions_emits_matrices() {
    let out = gclose(&["closure", "--preset", "quadratic:2", "--dump-actions"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["actions"]["sgen"].as_array().unwrap().len(), 1);
    assert_eq!(v["actions"]["act"].as_array().unwrap().len(), 2);
}

#[test]
fn report_spec_round_trips() {
    let first = json(&gclose(&["closure", "--preset", "product:trivial:1+matrix:2"]));
    let path = tmp("spec.json");
    std::fs::write(&path, serde_json::to_string(&first["algebra"]).unwrap()).unwrap();
    let out = gclose(&["closure", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let second = json(&out);
    assert_eq!(second["closure_dim"], 12);
    assert_eq!(second["algebra"], first["algebra"]);
}

#[test]
fn hermitian_of_trivial_cubic() {
    let out = gclose(&["hermitian", "--preset", "trivial:3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["computed_dim"], 10);
    assert_eq!(v["action_preserves_h"], true);
}

#[test]
fn check_quadratic_passes() {
    let out = gclose(&["check", "quadratic", "--preset", "quadratic:-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn check_base_change() {
    let out = gclose(&["check", "base-change", "--preset", "matrix:2", "--ext", "quadratic:2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn check_group_ring_dims() {
    let out = gclose(&["check", "group-ring", "--dims", "1,1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn catalog_mismatch_exits_2() {
    let out = gclose(&["catalog", "--inject-expected", "6=85"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let row = v["entries"].as_array().unwrap().iter().find(|e| e["row"] == "6").unwrap();
    assert_eq!(row["computed_dim"], 84);
    assert_eq!(row["expected_dim"], 85);
}

#[test]
fn dimension_guard() {
    let out = gclose(&["closure", "--preset", "matrix:3", "--dim-cap", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--force"), "{}", stderr(&out));
    let out = gclose(&["closure", "--preset", "matrix:3", "--dim-cap", "100", "--force"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dim_cap_env_and_flag_precedence() {
    let out = gclose_env(&["closure", "--preset", "matrix:3"], &[("GCLOSE_DIM_CAP", "100")]);
    assert_eq!(out.status.code(), Some(1));
    let out = gclose_env(&["closure", "--preset", "matrix:3", "--dim-cap", "1000"], &[("GCLOSE_DIM_CAP", "100")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn threads_and_sequential_agree() {
    let a = json(&gclose_env(&["closure", "--preset", "split:4"], &[("GCLOSE_THREADS", "2")]));
    let b = json(&gclose(&["closure", "--preset", "split:4", "--sequential"]));
    assert_eq!(a["closure_dim"], 24);
    assert_eq!(a["characters"], b["characters"]);
}

#[test]
fn out_writes_file() {
    let path = tmp("report.json");
    let out = gclose(&["closure", "--preset", "split:2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["closure_dim"], 2);
}

#[test]
fn bad_input_exits_1() {
    for args in [
        vec!["closure", "--preset", "nosuch:3"],
        vec!["closure", "--preset", "matrix:3", "--field", "prime:4"],
        vec!["closure"],
        vec!["closure", "--spec", "/nonexistent/spec.json"],
    ] {
        let out = gclose(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn malformed_spec_names_the_problem() {
    let path = tmp("bad.json");
    std::fs::write(&path, r#"{"kind": "table", "field": "rational", "rank": 2}"#).unwrap();
    let out = gclose(&["closure", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unit"), "{}", stderr(&out));
}

#[test]
fn presets_lists_syntax() {
    let out = gclose(&["presets"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let syntax: Vec<&str> = v["presets"].as_array().unwrap().iter().map(|p| p["syntax"].as_str().unwrap()).collect();
    assert!(syntax.contains(&"matrix:n"));
}
