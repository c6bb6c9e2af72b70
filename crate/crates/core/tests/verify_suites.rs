use slt_core::verify::{run_fixture, SUITE_FIXTURES};
use slt_core::SolverOptions;

fn assert_all_pass(name: &str) {
    let results = run_fixture(name, &SolverOptions::default()).unwrap();
    assert!(results.len() >= 10);
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.to_string())
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn c0_suite() {
    assert_all_pass("c0");
}

#[test]
fn c1_suite() {
    assert_all_pass("c1");
}

#[test]
fn c2_suite() {
    assert_all_pass("c2");
}

#[test]
fn zero_mode_suite() {
    assert_all_pass("zero-mode");
}

#[test]
fn skewed_suite() {
    assert_all_pass("skewed");
}

#[test]
fn suite_list() {
    assert_eq!(SUITE_FIXTURES, ["c0", "c1", "c2"]);
}
