//! The ten acceptance criteria. Runs without the libtest harness so that the
//! PASS/FAIL line of every criterion is always printed; exits nonzero if any
//! criterion fails or exceeds its runtime limit.

use std::process::ExitCode;
use std::time::Duration;

use rainbow_forge_harness::regression::{
    check_conjecture_scan, check_determinism, check_discrepancy, check_forest_embeddings,
    check_induced_path_count, check_long_cycles, check_oracles, check_pending_cycles,
    check_rainbow_independent_sets, check_random_experiment, Check, Outcome, RegressionOptions,
};

const CRITERIA: [(Check, Option<u64>); 10] = [
    (check_rainbow_independent_sets, Some(120)),
    (check_discrepancy, Some(60)),
    (check_pending_cycles, None),
    (check_long_cycles, None),
    (check_induced_path_count, Some(30)),
    (check_forest_embeddings, None),
    (check_oracles, None),
    (check_random_experiment, None),
    (check_conjecture_scan, Some(600)),
    (check_determinism, None),
];

fn main() -> ExitCode {
    let opts = RegressionOptions::default();
    let mut failed = 0;
    println!("\nrunning {} acceptance criteria", CRITERIA.len());
    for (check, limit) in CRITERIA {
        let report = check(&opts);
        let elapsed = Duration::from_millis(report.wall_ms);
        let late = limit.map(Duration::from_secs).filter(|&l| elapsed > l);
        let ok = report.outcome == Outcome::Pass && report.cases > 0 && late.is_none();
        let mut line = report.line();
        if !ok && report.outcome == Outcome::Pass {
            line = line.replacen("PASS", "FAIL", 1);
        }
        if let Some(l) = late {
            line.push_str(&format!(" -- took {elapsed:?}, limit {l:?}"));
        }
        println!("{line} [{} ms]", report.wall_ms);
        for note in &report.notes {
            println!("    {note}");
        }
        for d in report.detail.iter().skip(1) {
            println!("    {d}");
        }
        if !ok {
            failed += 1;
        }
    }
    println!(
        "\nacceptance: {} passed, {failed} failed\n",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
