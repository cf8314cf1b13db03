mod common;

use common::fixtures::{m03_typed, typed, M04_10, M05_11_TOP};
use common::{brute_force_extension, Point};
use maxclass::exactnum::{ParamPoly, Rational};
use maxclass::extend::*;
use maxclass::liealg::*;

#[test]
fn tables_match_typed_fixtures() {
    for k in 3..=10 {
        assert_eq!(
            build_filiform_table(FiliformTable::M03, k).unwrap(),
            m03_typed(k),
            "k = {}",
            k
        );
    }
    assert_eq!(
        build_filiform_table(FiliformTable::M04_10, 0).unwrap(),
        typed(10, &[M04_10])
    );
    let m05 = build_filiform_table(FiliformTable::M05_11, 0).unwrap();
    assert_eq!(m05, typed(11, &[M04_10, M05_11_TOP]));
    assert_eq!(m05.lambda(5, 6), ParamPoly::constant(Rational::new(21, 2)));
}

#[test]
fn tables_are_lie() {
    for k in 3..=10 {
        assert!(jacobi_check(&m03_typed(k)).is_empty(), "k = {}", k);
    }
    assert!(jacobi_check(&typed(10, &[M04_10])).is_empty());
    assert!(jacobi_check(&typed(11, &[M04_10, M05_11_TOP])).is_empty());
}

#[test]
fn m03_9_extends_to_the_printed_tables() {
    let m03 = m03_typed(3);
    let first = extend_once(&m03).unwrap();
    assert_eq!(first.kind, ExtensionKind::Unique);
    assert_eq!(first.algebra.as_ref(), Some(&typed(10, &[M04_10])));
    let second = extend_once(first.algebra.as_ref().unwrap()).unwrap();
    assert_eq!(second.kind, ExtensionKind::Unique);
    assert_eq!(second.algebra, Some(typed(11, &[M04_10, M05_11_TOP])));
}

/// The solution set of the full Jacobi system at the new level, solved
/// directly, must be the single point given by `want`.
fn brute_force_unique(a: &GradedAlgebra, want: &GradedAlgebra) {
    let (slots, sol) = brute_force_extension(a, &Point::new());
    let (particular, kernel) = sol.expect("consistent");
    assert!(kernel.is_empty());
    let n = want.top();
    for (c, &r) in slots.iter().enumerate() {
        assert_eq!(
            particular[c],
            common::to_q(&want.lambda(r, n - r).constant_value().unwrap())
        );
    }
}

#[test]
fn extensions_are_unique_by_direct_solve() {
    brute_force_unique(&m03_typed(3), &typed(10, &[M04_10]));
    brute_force_unique(&typed(10, &[M04_10]), &typed(11, &[M04_10, M05_11_TOP]));
}

#[test]
fn m05_11_has_no_extension() {
    let m05 = typed(11, &[M04_10, M05_11_TOP]);
    let out = extend_once(&m05).unwrap();
    assert_eq!(out.kind, ExtensionKind::Inconsistent);
    assert!(!out.certified_contradictions().is_empty());
    assert!(brute_force_extension(&m05, &Point::new()).1.is_none());
}

#[test]
fn m03_beyond_k3_has_no_extension() {
    for k in 4..=10 {
        let a = m03_typed(k);
        let out = extend_once(&a).unwrap();
        assert_eq!(out.kind, ExtensionKind::Inconsistent, "k = {}", k);
        assert!(brute_force_extension(&a, &Point::new()).1.is_none(), "k = {}", k);
    }
}
