//! The built-in algebras, their invariants, and a graded isomorphism test.

use maxclass::classify::recognize_type;
use maxclass::exactnum::ParamPoly;
use maxclass::liealg::{
    build_extension_family, build_m0q, build_mq, build_witt, emit_algebra, graded_iso, jacobi_check, verify_leibniz,
    GradedAlgebra,
};

fn describe(name: &str, a: &GradedAlgebra) {
    println!(
        "{:<22} dim {:>2}  Jacobi violations {}  Leibniz violations {}  type {:?}",
        name,
        a.dim(),
        jacobi_check(a).len(),
        verify_leibniz(a).len(),
        recognize_type(a)
    );
}

fn main() {
    describe("m^3_0(12)", &build_m0q(3, 12).unwrap());
    describe("m_3(12)", &build_mq(3, 12).unwrap());
    describe("W^3(12)", &build_witt(3, 12).unwrap());

    // m^3_{0,3}(11; b1) with a symbolic parameter.
    let fam = build_extension_family(3, 4, 3, &[ParamPoly::var("b1")]).unwrap();
    describe("m^3_(0,3)(11; b1)", &fam);
    print!("{}", emit_algebra(&fam));

    let w = build_witt(3, 12).unwrap();
    let scaled = build_witt(3, 12).unwrap();
    println!(
        "W^3 iso to itself: {}",
        graded_iso(&w, &scaled).unwrap().is_isomorphic()
    );
    println!(
        "W^3 iso to m_3: {}",
        graded_iso(&w, &build_mq(3, 12).unwrap()).unwrap().is_isomorphic()
    );
}
