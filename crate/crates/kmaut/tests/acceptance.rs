//! Runs the twelve acceptance criteria over the full algebra ranges, printing one
//! PASS/FAIL line per criterion.

use std::time::Instant;

use kmaut::verify::{run_criterion, Depth, CRITERIA};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() as u8 {
        let start = Instant::now();
        let report = run_criterion(id, Depth::Full);
        println!("{report} [{:.1}s]", start.elapsed().as_secs_f64());
        for f in report.failures.iter().skip(1).take(5) {
            println!("      {f}");
        }
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
