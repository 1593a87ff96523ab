//! End-to-end acceptance suite: runs every verification check at its pinned
//! tolerance and prints one pass/fail line per check.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use segment_spectra::verification;

fn report(outcome: &verification::CheckOutcome) {
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    println!("{status} criterion {} ({})", outcome.id, outcome.name);
    for d in &outcome.details {
        println!("       {d}");
    }
    assert!(
        outcome.passed,
        "criterion {} ({}) failed: {:?}",
        outcome.id, outcome.name, outcome.details
    );
}

#[test]
fn criterion_1_reference_spectrum() {
    report(&verification::check_reference_spectrum());
}

#[test]
fn criterion_2_projection_construction() {
    report(&verification::check_projection_construction());
}

#[test]
fn criterion_3_zero_set_structure() {
    report(&verification::check_zero_set_structure());
}

#[test]
fn criterion_4_two_interval_agreement() {
    report(&verification::check_two_interval_agreement());
}

#[test]
fn criterion_5_crossing_certificate() {
    report(&verification::check_crossing_certificate());
}

#[test]
fn criterion_6_irrational_diagnostics() {
    report(&verification::check_irrational_diagnostics());
}

#[test]
fn criterion_7_cross_validation() {
    report(&verification::check_cross_validation());
}

#[test]
fn criterion_8_bessel_bounds() {
    report(&verification::check_bessel_bounds());
}
