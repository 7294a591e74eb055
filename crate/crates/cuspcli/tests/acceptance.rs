//! Acceptance criteria 1–15 at their stated tolerances, one line per
//! criterion. Criteria with a runtime limit are also timed.

use cuspcli::verify::{config_checks, criterion_checks, invariant_checks, CRITERIA};
use cuspcli::{CheckStatus, RunConfig, VerifyReport, GOLDEN_ENV};
use std::path::Path;
use std::time::{Duration, Instant};

fn runtime_limit(n: u32) -> Option<Duration> {
    match n {
        1 => Some(Duration::from_secs(1)),
        3 => Some(Duration::from_secs(5)),
        5 => Some(Duration::from_secs(120)),
        7 => Some(Duration::from_secs(300)),
        8 => Some(Duration::from_secs(600)),
        _ => None,
    }
}

fn failures(reports: &[VerifyReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.status == CheckStatus::Fail)
        .map(|r| format!("{} measured {:e} > {:e} ({})", r.check_id, r.measured, r.threshold, r.notes))
        .collect()
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut all = Vec::new();
    for n in CRITERIA {
        let t = Instant::now();
        let reports = criterion_checks(n);
        let elapsed = t.elapsed();
        let mut problems = failures(&reports);
        if let Some(limit) = runtime_limit(n) {
            if elapsed > limit {
                problems.push(format!("runtime {elapsed:?} exceeds {limit:?}"));
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:2}: {verdict} ({} checks, {:.2?})", reports.len(), elapsed);
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed.push(n);
        }
        all.extend(reports);
    }

    // criterion 15: the full suite with the golden files in place
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    std::env::set_var(GOLDEN_ENV, &golden);
    let cfg = RunConfig { mu: 10.0, ..RunConfig::default() };
    all.extend(invariant_checks());
    all.extend(config_checks(&cfg));
    let total = start.elapsed();
    let mut problems = failures(&all);
    if all.iter().any(|r| r.check_id == "cfg-golden-spectrum" && r.status == CheckStatus::Skip) {
        problems.push("golden spectrum check skipped".into());
    }
    if total > Duration::from_secs(1200) {
        problems.push(format!("total runtime {total:?} exceeds 20 min"));
    }
    let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion 15: {verdict} ({} checks, {:.2?}, {} failing)", all.len(), total, problems.len());
    if !problems.is_empty() {
        failed.push(15);
    }

    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
