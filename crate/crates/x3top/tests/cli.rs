//! The x3top binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn x3top(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_x3top")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const SHAPE: [&str; 6] = ["--mu", "5/2", "--c1", "3/10", "--c2", "1/5"];

fn with_shape<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(SHAPE).collect()
}

#[test]
fn strata_reports_nine_classes() {
    let out = x3top(&with_shape(&["strata"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["N"], 9);
    assert_eq!(v["classes"][8]["index"], -9);
    assert_eq!(v["pass"], true);
}

#[test]
fn output_is_byte_stable() {
    let a = x3top(&with_shape(&["configs"]));
    let b = x3top(&with_shape(&["configs"]));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn pi_ranks_mu1() {
    let out = x3top(&["pi-ranks", "--case", "MU1", "--ell", "0", "--maxdeg", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ranks"], serde_json::json!([5, 5, 5, 10, 24, 55]));
    assert_eq!(v["case"], "MU1");
}

#[test]
fn expected_ranks_compare() {
    let out = x3top(&["expected-ranks", "--mu", "3/2", "--c1", "3/5", "--c2", "1/5", "--maxdeg", "5", "--compare"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["match"], true);
}

#[test]
fn hilbert_csv() {
    let out = x3top(&["--format", "csv", "hilbert", "--ring", "generic", "--range", "d", "--ell", "1", "--maxdeg", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("degree,dim"));
    assert!(text.contains("\n6,30\n"));
}

#[test]
fn relation_degrees_and_kernels() {
    let out = x3top(&["relation-degrees", "--range", "c", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degrees"], serde_json::json!([4, 4, 4, 4, 4, 10, 10]));
    let out = x3top(&["kernel", "--kind", "even1", "--k", "2", "--containment", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = x3top(&["kernel", "--kind", "even1", "--k", "2", "--containment", "4", "--printed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["failures"].as_array().unwrap().is_empty());
}

#[test]
fn induction_identity() {
    let out = x3top(&["--format", "pretty", "induction-identity", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("result: pass\n"));
}

#[test]
fn toric_commands() {
    let out = x3top(&with_shape(&["polygon", "--torus", "3", "--n", "2"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["delzant"], true);
    let out = x3top(&with_shape(&["karshon", "--torus", "1", "--n", "1", "--xi", "1,0"]));
    assert_eq!(out.status.code(), Some(0));
    let out = x3top(&with_shape(&["relations", "--bound", "1"]));
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["image_pairs_compared"].as_u64().unwrap() > 0);
}

#[test]
fn inflate_check_exit_codes() {
    let ok = x3top(&["inflate-check", "--table", "15", "--column", "2", "--mu", "19/10", "--c1", "3/10", "--c2", "1/5", "--b", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["executed_value"], "37/135");
    let misprint = x3top(&["inflate-check", "--table", "4", "--column", "2", "--mu", "27/10", "--c1", "3/4", "--c2", "1/5", "--b", "1"]);
    assert_eq!(misprint.status.code(), Some(1));
    let outside = x3top(&["inflate-check", "--table", "3", "--column", "1", "--mu", "5/2", "--c1", "3/10", "--c2", "1/5", "--b", "1"]);
    assert_eq!(outside.status.code(), Some(2));
    let unchecked = x3top(&["inflate-check", "--unchecked", "--table", "3", "--column", "1", "--mu", "5/2", "--c1", "3/10", "--c2", "1/5", "--b", "1"]);
    assert_eq!(unchecked.status.code(), Some(0));
    assert_eq!(json(&unchecked)["executed_value"], "13/6");
}

#[test]
fn usage_errors() {
    assert_eq!(x3top(&["nonsense"]).status.code(), Some(2));
    assert_eq!(x3top(&["strata", "--mu", "0.5", "--c1", "1/3", "--c2", "1/4"]).status.code(), Some(2));
    let out = x3top(&["strata", "--mu", "1/2", "--c1", "1/3", "--c2", "1/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("mu = 1/2 < 1"));
    assert_eq!(x3top(&["verify-all", "--only", "11"]).status.code(), Some(2));
}

#[test]
fn verify_all_subset() {
    let out = x3top(&["verify-all", "--quick", "--only", "1,7,10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    let out = x3top(&["verify-all", "--quick", "--only", "9"]);
    assert_eq!(out.status.code(), Some(1));
}
