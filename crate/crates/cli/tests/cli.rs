use std::process::{Command, Output};

use serde_json::Value;

fn hok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hok")).args(args).output().expect("binary runs")
}

fn payload(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    assert_eq!(v["status"], "ok", "{v}");
    v["payload"].clone()
}

#[test]
fn g2_threshold() {
    let out = hok(&["qthreshold", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["q_T"], 6);
    assert_eq!(p["closed_form"], 6);
}

#[test]
fn threshold_with_q() {
    let p = payload(&hok(&["qthreshold", "--type", "A2", "--isogeny", "sc", "--q", "7"]));
    assert!(p.get("regular_reduction").is_some());
}

#[test]
fn fixture_rank_and_det() {
    let p = payload(&hok(&["fourier", "--fixture", "M8", "--rank-of"]));
    assert_eq!(p["rank"], 1);
    let p = payload(&hok(&["fourier", "--fixture", "M4", "--det"]));
    assert_eq!(p["det"], "1/192");
}

#[test]
fn unknown_fixture_is_usage_error() {
    let out = hok(&["fourier", "--fixture", "M99"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(hok(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hok(&["rootdata", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(hok(&["rootdata", "--type", "B2", "--csv"]).status.code(), Some(2));
    assert_eq!(hok(&["ranklemma", "--z", "1"]).status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    let out = hok(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ranklemma"));
}

#[test]
fn resource_limits_exit_3() {
    assert_eq!(hok(&["ranklemma", "--sweep", "12"]).status.code(), Some(3));
    assert_eq!(hok(&["finite", "--group", "gl3", "--q", "5"]).status.code(), Some(3));
    assert_eq!(hok(&["tori", "--type", "E8", "--limit", "1000"]).status.code(), Some(3));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["symbols", "--series", "D", "--rank", "4", "--families"][..],
        &["fourier", "--gamma", "S4"][..],
        &["finite", "--group", "gl2", "--q", "3", "--check", "all", "--pairs", "10"][..],
    ] {
        let a = hok(args);
        let b = hok(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sign_matrix_csv() {
    let out = hok(&["ranklemma", "--z", "2", "--zp", "1", "--d", "1", "--dp", "0", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert!(!rows.is_empty());
    let width = rows[0].split(',').count();
    for r in &rows {
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells.len(), width);
        assert!(cells.iter().all(|c| *c == "1/1" || *c == "-1/1"));
    }
}

#[test]
fn sign_matrix_json() {
    let p = payload(&hok(&["ranklemma", "--z", "2", "--zp", "1", "--d", "1", "--dp", "0", "--emit-matrix"]));
    assert_eq!(p["passed"], true);
    assert!(p["matrix"].is_array());
}

#[test]
fn small_sweep() {
    let p = payload(&hok(&["ranklemma", "--sweep", "4"]));
    assert_eq!(p["all_passed"], true);
}

#[test]
fn orbital_gl3_q2() {
    let out = hok(&["orbital", "--group", "gl3", "--q", "2"]);
    let p = payload(&out);
    assert_eq!(p["dchk"]["passed"], true);
    assert_eq!(p["unipotent"]["all_in_span"], true);
    assert_eq!(p["torus"]["is_basis"], false);
}

#[test]
fn adjunction_gl2_q3() {
    let out = hok(&["finite", "--group", "gl2", "--q", "3", "--check", "adjunction"]);
    assert_eq!(out.status.code(), Some(0));
    let p = payload(&out);
    assert_eq!(p["all_passed"], true);
    assert_eq!(p["checks"][0]["failed"], 0);
}

#[test]
fn twisted_checks() {
    let out = hok(&["finite", "--group", "gl3", "--q", "2", "--check", "vdx", "--twisted"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn rootdata_lattices() {
    let p = payload(&hok(&["rootdata", "--type", "A3"]));
    assert_eq!(p["coxeter_number"], 4);
    assert_eq!(p["weyl_order"], 24);
    let idx: Vec<i64> = p["lattices"].as_array().unwrap().iter().map(|l| l["index"].as_i64().unwrap()).collect();
    assert!(idx.contains(&1) && idx.contains(&4));
}
