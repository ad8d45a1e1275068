//! One test per acceptance criterion. Each prints its PASS/FAIL line to the real stdout so the
//! line survives output capture; tolerances and limits are pinned in `verify::acceptance`.

use std::io::Write;

use akcone::verify::acceptance::{self, Outcome};

const SEED: u64 = 0;

fn report(o: Outcome) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", o.line());
    let _ = out.flush();
    assert!(o.passed, "{}", o.line());
}

#[test]
fn criterion_01_exceptional_enumeration() {
    report(acceptance::criterion_01());
}

#[test]
fn criterion_02_spherical_classification() {
    report(acceptance::criterion_02());
}

#[test]
fn criterion_03_positivity_pairings() {
    report(acceptance::criterion_03());
}

#[test]
fn criterion_04_he_selection() {
    report(acceptance::criterion_04());
}

#[test]
fn criterion_05_rank_two_duals() {
    report(acceptance::criterion_05());
}

#[test]
fn criterion_06_sp_round_trip() {
    report(acceptance::criterion_06(SEED));
}

#[test]
fn criterion_07_face_reduction() {
    report(acceptance::criterion_07(SEED));
}

#[test]
fn criterion_08_dimension_bounds() {
    report(acceptance::criterion_08());
}

#[test]
fn criterion_09_taubes_bookkeeping() {
    report(acceptance::criterion_09_taubes());
}

#[test]
fn criterion_09_standardform_screen() {
    report(acceptance::criterion_09_screen());
}

#[test]
fn criterion_10_ck_decision() {
    report(acceptance::criterion_10(SEED));
}
