//! Acceptance gate: runs every criterion suite and prints one line per
//! criterion. Runtime bounds are asserted where the criterion pins one.

use std::time::Duration;

use dpath_core::report::Report;
use dpath_core::suites;

const SEED: u64 = 42;

fn run(name: &str) -> Report {
    suites::run(name, SEED).expect("known suite")
}

fn gate(criterion: &str, report: &Report) -> bool {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {criterion} — suite `{}`: {} checks in {:.1} ms",
        report.suite,
        report.checks.len(),
        report.elapsed.as_secs_f64() * 1e3
    );
    if !report.passed() {
        for c in report.checks.iter().filter(|c| !c.pass) {
            println!(
                "       failed: {} (expected {:?}, actual {})",
                c.name, c.expected, c.actual
            );
        }
    }
    report.passed()
}

#[test]
fn acceptance_criteria() {
    let mut all_pass = true;

    let r = run("reparam-algebra");
    all_pass &= gate("1. reparametrization algebra, 1000 randomized instances", &r);
    assert!(
        r.elapsed < Duration::from_secs(10),
        "criterion 1 must finish within 10 s, took {:?}",
        r.elapsed
    );

    all_pass &= gate(
        "2. normal-form uniqueness under 500 random refactorings",
        &run("normal-form"),
    );
    all_pass &= gate(
        "3. naturalization homomorphism and Moore associativity",
        &run("naturalization"),
    );
    all_pass &= gate(
        "4. achronal slices of the twisted disk meet states on the whole grid",
        &run("psi-counterexample"),
    );
    all_pass &= gate("5. saturation of generated path predicates", &run("saturation"));
    all_pass &= gate(
        "6. chain trace counts and pack/unpack round trips",
        &run("trace-counts"),
    );
    all_pass &= gate(
        "7. natural-length profile of the disk family",
        &run("length-profile"),
    );
    all_pass &= gate(
        "8. relation audit of the indexed category up to degree 6",
        &run("reedy-audit"),
    );

    let r = run("pushout-checker");
    all_pass &= gate("9. pushout trace bijection on the fixture attachments", &r);
    assert!(
        r.elapsed < Duration::from_secs(60),
        "criterion 9 must finish within 60 s, took {:?}",
        r.elapsed
    );

    all_pass &= gate(
        "10. trace and strict-trace invariance under time changes",
        &run("flavor-comparison"),
    );

    assert!(all_pass, "at least one acceptance criterion failed");
}

#[test]
fn structured_reports_are_seed_stable() {
    for name in ["reparam-algebra", "normal-form", "trace-counts"] {
        let a = suites::run(name, 7).unwrap().to_json();
        let b = suites::run(name, 7).unwrap().to_json();
        assert_eq!(a, b, "suite {name} is not bit-stable under a fixed seed");
    }
}
