mod common;

use common::{runner, CASES, SEED};

fn holds(check: fn(&mut proptest::test_runner::TestRunner) -> Result<(), String>) {
    if let Err(e) = check(&mut runner(SEED, CASES)) {
        panic!("{e}");
    }
}

#[test]
fn print_parse_roundtrip() {
    holds(common::print_parse_roundtrip);
}

#[test]
fn substitution_monoid() {
    holds(common::substitution_monoid);
}

#[test]
fn substitution_endomorphism() {
    holds(common::substitution_endomorphism);
}

#[test]
fn preimage_inclusions() {
    holds(common::preimage_inclusions);
}

#[test]
fn restricted_valuations() {
    holds(common::restricted_valuations);
}

#[test]
fn substitution_invariance() {
    holds(common::substitution_invariance);
}

#[test]
fn persistence() {
    holds(common::persistence);
}

#[test]
fn forces_matches_algebra() {
    holds(common::forces_matches_algebra);
}

#[test]
fn quotient_homomorphism() {
    holds(common::quotient_homomorphism);
}

#[test]
fn free_algebra_spot_check() {
    holds(common::free_algebra_spot_check);
}

#[test]
fn normal_forms_keep_tables() {
    holds(common::normal_forms_keep_tables);
}
