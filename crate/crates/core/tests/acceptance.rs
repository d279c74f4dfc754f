//! One test per acceptance criterion. Each prints a single pass/fail line,
//! followed by the failing checks when there are any. Lines go straight to
//! stderr so they show up without `--nocapture`.

use std::io::Write;

use subregular::acceptance;

fn criterion(id: usize) {
    let r = acceptance::run(id, false);
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{}", r.line());
    for f in r.failures() {
        let _ = writeln!(err, "    {f}");
    }
    drop(err);
    assert!(r.passed, "criterion {id} failed");
}

#[test]
fn criterion_01_completion() {
    criterion(1);
}

#[test]
fn criterion_02_dimensions() {
    criterion(2);
}

#[test]
fn criterion_03_verma_structure() {
    criterion(3);
}

#[test]
fn criterion_04_projective_identity() {
    criterion(4);
}

#[test]
fn criterion_05_ext_quiver() {
    criterion(5);
}

#[test]
fn criterion_06_no_cycle() {
    criterion(6);
}

#[test]
fn criterion_07_upsilon() {
    criterion(7);
}

#[test]
fn criterion_08_modular_lie() {
    criterion(8);
}

#[test]
fn criterion_09_hecke() {
    criterion(9);
}

#[test]
fn criterion_10_cross_theory() {
    criterion(10);
}
