use serde_json::Value;
use x3top_web::{inflate_check, pi_ranks, strata};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn strata_returns_json() {
    let v = parse(strata("19/10", "3/10", "1/5"));
    assert_eq!(v["exit"], 0);
    assert!(v["result"].is_object());
}

#[test]
fn inflate_check_known_value() {
    let v = parse(inflate_check("15", "2", "19/10", "3/10", "1/5", "2"));
    assert_eq!(v["exit"], 0);
    assert_eq!(v["result"]["executed_value"], "37/135");
}

#[test]
fn pi_ranks_mu1() {
    let v = parse(pi_ranks("MU1", 0, 6));
    assert_eq!(v["exit"], 0);
    assert!(v["result"].to_string().contains("55"));
}

#[test]
fn bad_input_reports_error() {
    let v = parse(strata("x", "1/2", "1/3"));
    assert_eq!(v["exit"], 2);
    assert!(!v["error"].as_str().unwrap().is_empty());
}
