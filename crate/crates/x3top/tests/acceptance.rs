//! Acceptance suite: one PASS/FAIL line per criterion, then a summary.

use x3top::verify::{run, Outcome};

fn report(outs: &[Outcome]) {
    for o in outs {
        println!("{}", o.line());
        for d in &o.details {
            println!("      {d}");
        }
    }
    let passed = outs.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass", outs.len());
}

#[test]
fn acceptance() {
    let outs: Vec<Outcome> = (1..=10).map(|i| run(i, false)).collect();
    report(&outs);
    let failed: Vec<String> = outs
        .iter()
        .filter(|o| !o.pass)
        .map(|o| format!("criterion {}: {}", o.id, o.failures.join(" | ")))
        .collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
