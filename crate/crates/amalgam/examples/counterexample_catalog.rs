//! The executable catalog of boundary instances: each entry is a valid
//! triple of its class whose amalgam provably fails to exist (or whose
//! misapplied construction visibly breaks an axiom).
//!
//! ```bash
//! cargo run --example counterexample_catalog
//! ```

use amalgam::counterexamples::{build, verify, CATALOG};
use amalgam::oracle::DEFAULT_BUDGET;

fn main() -> amalgam::Result<()> {
    for entry in &CATALOG {
        let (_, t) = build(entry.name)?;
        let report = verify(entry.name, DEFAULT_BUDGET)?;
        println!(
            "{:9} |A|={} |B|={} |C|={} expected={} -> {}",
            entry.name,
            t.a().len(),
            t.b().len(),
            t.c().len(),
            entry.expectation.name(),
            if report.all_passed() {
                "confirmed"
            } else {
                "MISMATCH"
            },
        );
        for line in report.render().lines() {
            println!("    {}", line);
        }
    }
    Ok(())
}
