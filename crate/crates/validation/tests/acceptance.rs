//! Acceptance battery: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use cptq_validation::{run_all, Battery, CLAIM_IDS};

fn main() -> ExitCode {
    // `cargo test -- --list` and friends pass flags; honour a name filter only
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let report = run_all(&Battery::shipped());
    let mut failed = 0;
    for id in CLAIM_IDS {
        if filter.as_deref().is_some_and(|f| !id.contains(f)) {
            continue;
        }
        let claim = report.claim(id).expect("every claim is run");
        println!("{}", claim.line());
        if !claim.passed() {
            failed += 1;
            for c in claim.failing_checks() {
                println!("    {} = {:e} (need {} {:e})", c.metric, c.measured, c.comparator.symbol(), c.threshold);
            }
        }
    }
    println!("\n{}", report.table());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
