//! Runs every reproducibility criterion and prints one PASS/FAIL line each.
//!
//! Run with `cargo test -p entdist --test acceptance -- --nocapture`.

use entdist::verify::{run_criterion, Suite, VerifyConfig};

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for id in Suite::All.criteria() {
        let report = run_criterion(id, &cfg).expect("criterion evaluation");
        println!("{report}");
        if !report.passed {
            failed.push(id);
        }
    }
    println!("{} of {} criteria passed", 16 - failed.len(), 16);
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
