//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Tolerances are exact (zero mismatches) everywhere; each criterion also
//! carries a wall-clock budget. Criterion 4 fails on the literal reading of
//! the parity conditions; the target still succeeds when that failure has
//! exactly the documented form, and fails on anything else.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use stab_core::classify::{in_diamond, is_finite_dimensional, Phi, Verdict};
use stab_core::suites::{noplus_survey, run_suite, SuiteConfig, SuiteReport};
use stab_core::table::skew_diagnostics;
use stab_core::{Coset, Diagram, Entry, LieType, STable, Sign};

struct Line {
    id: u8,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

impl Line {
    fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    fn print(&self) {
        let status = if self.pass && self.within_budget() { "PASS" } else { "FAIL" };
        println!(
            "{status} [{}] {}: {} ({:.1}s, budget {}s)",
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
    }
}

fn timed(id: u8, title: &'static str, budget_secs: u64, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (pass, detail) = f();
    Line { id, title, pass, detail, elapsed: start.elapsed(), budget: Duration::from_secs(budget_secs) }
}

fn suite_line(report: &SuiteReport) -> (bool, String) {
    let mut detail = format!("{} checked, {} failed", report.checked, report.failed);
    for finding in report.findings.iter().filter(|f| !f.detail.is_empty()).take(1) {
        detail.push_str(&format!("; first [{}] {}: {}", finding.label, finding.detail, finding.reproducer));
    }
    (report.passed(), detail)
}

fn pi(k: i64) -> Entry {
    Entry::generic("pi", Sign::Plus, k)
}

fn ints(v: &[i64]) -> Vec<Entry> {
    v.iter().map(|&k| Entry::int(k)).collect()
}

fn worked_examples() -> (bool, String) {
    let mut problems = Vec::new();

    let member = STable::from_top(vec![ints(&[4, 5]), vec![pi(0), Entry::int(2), Entry::int(3)]]);
    if !in_diamond(&member, Phi::Plus).accepted {
        problems.push("displayed member rejected by the membership test");
    }
    if is_finite_dimensional(&member.row_class(), LieType::D).map(|d| d.verdict) != Ok(Verdict::FiniteDimensional) {
        problems.push("displayed member not finite dimensional in type D");
    }

    // the first display, with bottom row -5, -3 as printed
    let first = vec![ints(&[4, 5]), vec![pi(0), Entry::int(2), Entry::int(3)], vec![Entry::int(-3), Entry::int(-2), pi(0).neg()], ints(&[-5, -3])];
    let d = Diagram::new(first.clone());
    if d.restrict(Coset::Int).rows() != [ints(&[4, 5]), ints(&[2, 3]), ints(&[-3, -2]), ints(&[-5, -3])] {
        problems.push("integral restriction differs from the display");
    }
    if d.restrict(pi(0).coset).rows() != [vec![], vec![pi(0)], vec![], vec![]] {
        problems.push("pi restriction differs from the display");
    }
    let flagged = skew_diagnostics(&first);
    if flagged.is_empty() || STable::new(first).is_ok() {
        problems.push("first display not flagged as skew inconsistent");
    }

    let detail = if problems.is_empty() {
        format!("member accepted and finite dimensional, restrictions exact, first display flagged at {}", flagged.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))
    } else {
        problems.join("; ")
    };
    (problems.is_empty(), detail)
}

/// Criterion 4's documented failure: every mismatch passes on `A` and fails
/// only the column strictness condition on `A+`.
fn noplus() -> (bool, String, bool) {
    let s = noplus_survey(&SuiteConfig::default());
    let n = s.mismatches.len();
    if n == 0 {
        return (true, format!("{} fillings, zero mismatches", s.checked), true);
    }
    let documented = s.accepted_on_a_only == n && s.broken_on_plus.keys().copied().eq(["M4"]);
    let smallest = s.mismatches.first().map(|a| a.to_string()).unwrap_or_default();
    let detail = format!(
        "{} fillings, {n} mismatches ({} pass on A but not on A+, failing condition counts on A+ {:?}; {} still finite dimensional through their orbit); smallest {smallest}",
        s.checked, s.accepted_on_a_only, s.broken_on_plus, s.rescued_by_orbit
    );
    (false, detail, documented)
}

fn catalog_bytes(dir: &std::path::Path, ty: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_stab"))
        .args(["primids", "pyramid.json", "--type", ty, "--alphabet", "alphabet.json", "--seed", "1"])
        .current_dir(dir)
        .output()
        .expect("stab runs");
    assert!(out.status.success(), "primids failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn stability() -> (bool, String) {
    let report = run_suite("stability", &SuiteConfig::default()).expect("known suite");
    let (mut pass, mut detail) = suite_line(&report);
    let dir = tempfile::tempdir().expect("temp dir");
    std::fs::write(dir.path().join("pyramid.json"), r#"{"rows": [1, 2]}"#).expect("write");
    std::fs::write(
        dir.path().join("alphabet.json"),
        r#"[0, 1, -1, {"label": "zeta", "sign": "+"}, {"label": "zeta", "sign": "-"}]"#,
    )
    .expect("write");
    for ty in ["C", "D"] {
        let runs = [catalog_bytes(dir.path(), ty), catalog_bytes(dir.path(), ty)];
        if runs[0] != runs[1] || runs[0].is_empty() {
            pass = false;
            detail.push_str(&format!("; stab primids type {ty} output differs between runs"));
        }
    }
    if pass {
        detail.push_str("; stab primids byte stable across runs");
    }
    (pass, detail)
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let suite = |name: &str| suite_line(&run_suite(name, &cfg).expect("known suite"));
    let mut lines = Vec::new();
    let mut expected_failure = false;

    lines.push(timed(1, "RS statistics against exhaustive subsequence search", 300, || suite("rs-oracles")));
    lines.push(timed(2, "shape test for column strictness, both directions", 600, || suite("trecs")));
    lines.push(timed(3, "worked examples", 1, worked_examples));
    lines.push(timed(4, "parity conditions on A against membership of A+", 900, || {
        let (pass, detail, documented) = noplus();
        expected_failure = !pass && documented;
        (pass, detail)
    }));
    lines.push(timed(5, "component group action identities", 600, || suite("split-lemmas")));
    let mut cplus_notes = Vec::new();
    lines.push(timed(6, "generator orbits of small pyramids", 600, || {
        let report = run_suite("cplus", &cfg).expect("known suite");
        cplus_notes = report.notes.iter().filter(|n| n.contains("informational") || n.starts_with("  ")).cloned().collect();
        suite_line(&report)
    }));
    lines.push(timed(7, "RS shape bounds in all eight cases", 600, || suite("bounds")));
    lines.push(timed(8, "decision stability and catalog determinism", 600, stability));

    for line in &lines {
        line.print();
    }
    for note in cplus_notes {
        println!("INFO [6] {}", note.trim());
    }

    let unexpected: Vec<u8> = lines.iter().filter(|l| !(l.pass && l.within_budget()) && !(l.id == 4 && expected_failure && l.within_budget())).map(|l| l.id).collect();
    if expected_failure {
        println!("NOTE [4] failure has the documented form: every mismatch passes on A and fails column strictness on A+");
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as documented");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
