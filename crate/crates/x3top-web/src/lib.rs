//! wasm-bindgen entry points. Each returns the JSON the CLI prints.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn call(args: &[&str]) -> String {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("x3top").chain(args.iter().copied());
    let code = x3top::cli::run(argv, &mut out, &mut err);
    let body = String::from_utf8_lossy(&out);
    match serde_json::from_str::<Value>(&body) {
        Ok(v) => json!({ "exit": code, "result": v }).to_string(),
        Err(_) => json!({
            "exit": code,
            "error": String::from_utf8_lossy(&err).trim(),
        })
        .to_string(),
    }
}

/// Strata classes of positive area and the configuration count.
#[wasm_bindgen]
pub fn strata(mu: &str, c1: &str, c2: &str) -> String {
    call(&["strata", "--mu", mu, "--c1", c1, "--c2", c2])
}

/// One inflation column at a given b.
#[wasm_bindgen]
pub fn inflate_check(table: &str, column: &str, mu: &str, c1: &str, c2: &str, b: &str) -> String {
    call(&[
        "inflate-check", "--table", table, "--column", column, "--mu", mu, "--c1", c1, "--c2", c2, "--b", b,
    ])
}

#[wasm_bindgen]
pub fn pi_ranks(case_id: &str, ell: i32, maxdeg: u32) -> String {
    let ell = ell.to_string();
    let maxdeg = maxdeg.to_string();
    call(&["pi-ranks", "--case", case_id, "--ell", &ell, "--maxdeg", &maxdeg])
}
