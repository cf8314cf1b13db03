mod common;

use std::collections::BTreeMap;

use common::fixtures::*;
use maxclass::exactnum::{ParamPoly, Rational};
use maxclass::varieties::*;

fn assert_matches(sys: &PolySystem, printed: &[(Label, ParamPoly)]) {
    assert_eq!(sys.polys.len(), printed.len(), "{}", sys.export());
    for (label, want) in printed {
        let got = sys.get(label).unwrap_or_else(|| panic!("missing {}", label));
        let diff = coefficient_diff(got, want);
        assert!(diff.is_empty(), "{}: differing coefficients {:?}", label, diff);
    }
}

fn label(kind: LabelKind, j: usize, q: usize, r: i64) -> Label {
    Label { kind, j, q, r }
}

#[test]
fn m9_is_a_single_conic() {
    assert_matches(&assemble_system(9).unwrap(), &[(Label::f(2, 3, 0), p(F230))]);
}

#[test]
fn m10_printed_system() {
    assert_matches(
        &assemble_system(10).unwrap(),
        &[
            (Label::f(2, 3, 0), p(F230)),
            (label(LabelKind::FPlusXG, 2, 3, 1), &p(F231) + &p(XG231)),
            (label(LabelKind::XG, 2, 4, -1), p(XG24M1)),
        ],
    );
}

#[test]
fn m11_printed_system() {
    assert_matches(
        &assemble_system(11).unwrap(),
        &[
            (Label::f(2, 3, 0), p(F230)),
            (Label::f(2, 3, 1), p(F231)),
            (Label::f(2, 4, 0), p(F240)),
            (Label::f(2, 3, 2), p(F232)),
        ],
    );
}

#[test]
fn f232_coefficient_on_x22_x40() {
    let f = gen_f(2, 3, 2).unwrap();
    let c = f
        .terms()
        .into_iter()
        .find(|(_, m)| m == &vec![("x[2,2]".to_string(), 1), ("x[4,0]".to_string(), 1)])
        .map(|(c, _)| c);
    assert_eq!(c, Some(Rational::from(-4)));
}

#[test]
fn mismatch_reports_the_coefficient() {
    let wrong = p(&F232.replace("- 4*x[4,0]*x[2,2]", "- 3*x[4,0]*x[2,2]"));
    let diff = coefficient_diff(&gen_f(2, 3, 2).unwrap(), &wrong);
    assert_eq!(diff.len(), 1);
    assert_eq!(diff[0].1, Rational::from(-4));
    assert_eq!(diff[0].2, Rational::from(-3));
}

fn polys(sys: &PolySystem) -> Vec<ParamPoly> {
    sys.polys.iter().map(|p| p.poly.clone()).collect()
}

fn assert_proportional_list(got: &[ParamPoly], want: &[ParamPoly]) {
    if let Err(e) = proportional_list(got, want) {
        panic!("{}: {:?}", e, got);
    }
}

#[test]
fn m10_zero_component_in_z_coordinates() {
    let x0 = restrict(&assemble_system(10).unwrap(), &[Zeroed::Weight(-1)]);
    let z = change_coords(&x0, &z_map_m10_0()).unwrap();
    assert_proportional_list(&polys(&z), &M10_0_Z.map(p));
}

#[test]
fn m10_nonzero_component_in_z_coordinates() {
    let z = change_coords(&assemble_system(10).unwrap(), &z_map_m10_1()).unwrap();
    let xm1 = VarietyVar::XMinus1.poly();
    let mut got = polys(&z);
    // x_{−1} ≠ 0 on this component, so the last equation is divided by it.
    got[2] = got[2].div_exact(&xm1).unwrap();
    assert_proportional_list(&got, &M10_1_Z.map(p));
    // Eliminating z_{0,0} with the linear equation.
    let mut elim = BTreeMap::new();
    elim.insert("z[0,0]".to_string(), p("2*z[1,0] + z[2,0]"));
    assert!(proportional(&got[0].substitute(&elim), &p(M10_1_PRESENTATION[0])));
    assert!(proportional(&got[1].substitute(&elim), &p(M10_1_PRESENTATION[1])));
}

#[test]
fn m11_in_z_coordinates() {
    let z = change_coords(&assemble_system(11).unwrap(), &z_map_m11()).unwrap();
    assert_proportional_list(&polys(&z), &M11_Z.map(p));
}

#[test]
fn coordinate_change_round_trip() {
    for (n, change) in [(10, z_map_m10_1()), (11, z_map_m11())] {
        let sys = assemble_system(n).unwrap();
        let there = change_coords(&sys, &change).unwrap();
        let back = change_coords(&there, &change.inverse().unwrap()).unwrap();
        assert_eq!(back, sys);
    }
    assert!(CoordinateChange::new(vec![(VarietyVar::z(0, 0), p("x[2,0]*x[3,0]"))])
        .inverse()
        .is_err());
}

fn nonzero(sys: &PolySystem) -> Vec<ParamPoly> {
    sys.polys
        .iter()
        .map(|p| p.poly.clone())
        .filter(|p| !p.is_zero())
        .collect()
}

#[test]
fn restriction_item3_odd_is_projective_space() {
    for n in (9..=25).step_by(2) {
        let zeroed: Vec<Zeroed> = (0..=(n as i64 - 9) / 2).map(Zeroed::Weight).collect();
        let r = restrict(&assemble_system(n).unwrap(), &zeroed);
        assert!(nonzero(&r).is_empty(), "n = {}: {}", n, r.export());
    }
}

#[test]
fn restriction_item3_even_keeps_only_xm1_terms() {
    // For even n the same restriction leaves exactly the x_{−1} G terms.
    for n in (10..=24).step_by(2) {
        let zeroed: Vec<Zeroed> = (0..=(n as i64 - 9) / 2).map(Zeroed::Weight).collect();
        let r = restrict(&assemble_system(n).unwrap(), &zeroed);
        for f in nonzero(&r) {
            assert!(f.contains_var("xm1"), "n = {}: {}", n, f);
        }
        let mut without = zeroed.clone();
        without.push(Zeroed::Weight(-1));
        assert!(nonzero(&restrict(&assemble_system(n).unwrap(), &without)).is_empty());
    }
}

#[test]
fn restriction_item4_single_quadric() {
    for n in 9..=25usize {
        let m = (n as i64 - 9).div_euclid(2);
        let r = restrict(&assemble_system(n).unwrap(), &all_weights_except(n, m));
        let want = keep_weight(&gen_f(2, 3, 2 * m as usize).unwrap(), m);
        assert!(!want.is_zero());
        assert_proportional_list(&nonzero(&r), &[want]);
    }
}

#[test]
fn restriction_item5_two_or_three_quadrics() {
    for n in 11..=25usize {
        let m = (n as i64 - 9).div_euclid(2) - 1;
        let r = restrict(&assemble_system(n).unwrap(), &all_weights_except(n, m));
        let labels: &[(usize, usize)] = if n % 2 == 1 {
            &[(2, 3), (2, 4)]
        } else {
            &[(2, 3), (2, 4), (3, 4)]
        };
        let weight = if n % 2 == 1 { n - 11 } else { n - 12 };
        let want: Vec<ParamPoly> = labels
            .iter()
            .map(|&(j, q)| keep_weight(&gen_f(j, q, weight).unwrap(), m))
            .collect();
        assert_proportional_list(&nonzero(&r), &want);
    }
}

#[test]
fn restrict_composes() {
    let sys = assemble_system(14).unwrap();
    let a = [Zeroed::Weight(0), Zeroed::Var(VarietyVar::x(3, 1))];
    let b = [Zeroed::Weight(2), Zeroed::Weight(-1)];
    let both: Vec<Zeroed> = a.iter().chain(b.iter()).copied().collect();
    assert_eq!(restrict(&restrict(&sys, &a), &b), restrict(&sys, &both));
}

#[test]
fn odd_n_never_uses_high_weights() {
    for n in (9..=25).step_by(2) {
        let sys = assemble_system(n).unwrap();
        assert!(sys.vars.iter().all(|v| v.weight() <= n as i64 - 9), "n = {}", n);
        assert!(!sys.vars.contains(&VarietyVar::XMinus1));
    }
}

fn point(vals: &[(VarietyVar, i64)], sys: &PolySystem) -> Point {
    let mut pt: Point = sys.vars.iter().map(|v| (*v, Rational::zero())).collect();
    for (v, x) in vals {
        pt.insert(*v, Rational::from(*x));
    }
    pt
}

#[test]
fn m9_evaluation() {
    let sys = assemble_system(9).unwrap();
    let at = |v| eval_point(&sys, &point(&[(v, 1)], &sys)).unwrap();
    assert_eq!(at(VarietyVar::x(2, 0)), vec![Rational::zero()]);
    // The generated F_{2,3,0} is the printed conic times −1.
    assert_eq!(at(VarietyVar::x(3, 0)), vec![Rational::from(3)]);
    assert!(matches!(eval_point(&sys, &Point::new()), Err(VarietyError::Unbound(_))));
}

fn m10_zero_z() -> PolySystem {
    let x0 = restrict(&assemble_system(10).unwrap(), &[Zeroed::Weight(-1)]);
    change_coords(&x0, &z_map_m10_0()).unwrap()
}

#[test]
fn m10_zero_component_jacobian() {
    let z = m10_zero_z();
    let cols: Vec<String> = ["z[0,0]", "z[1,0]", "z[2,0]", "z[0,1]", "z[1,1]", "z[2,1]"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let want = [
        ["z[2,0]", "-6*z[1,0]", "z[0,0]", "0", "0", "0"],
        ["-z[2,1]", "7*z[1,1]", "-z[0,1]", "-z[2,0]", "7*z[1,0]", "-z[0,0]"],
    ];
    let got = jacobian(&z);
    let names: Vec<String> = z.vars.iter().map(|v| v.name()).collect();
    for (r, row) in want.iter().enumerate() {
        // The printed rows are for the polynomials as printed; ours may differ
        // by a per-row sign.
        let first = names.iter().position(|n| *n == cols[0]).unwrap();
        let sign = if got.get(r, first) == &p(row[0]) { 1 } else { -1 };
        for (c, entry) in row.iter().enumerate() {
            let col = names.iter().position(|n| *n == cols[c]).unwrap();
            assert_eq!(got.get(r, col), &p(entry).scale(&Rational::from(sign)));
        }
    }
}

#[test]
fn m10_zero_component_singular_locus() {
    let z = m10_zero_z();
    let zv = |a, s| VarietyVar::z(a, s);
    // Off Z the rank is 2 at smooth points, on Z it drops.
    let on_z = point(&[(zv(0, 1), 1)], &z);
    assert!(jacobian_rank_at(&z, &on_z).unwrap() <= 1);
    let smooth = point(&[(zv(0, 0), 3), (zv(1, 0), 1), (zv(2, 0), 1), (zv(0, 1), 1)], &z);
    assert!(eval_point(&z, &smooth).unwrap()[0].is_zero());
    assert_eq!(jacobian_rank_at(&z, &smooth).unwrap(), 2);
    // Every 2×2 minor vanishes on z_{0,0} = z_{1,0} = z_{2,0} = 0.
    let mut zero = BTreeMap::new();
    for v in ["z[0,0]", "z[1,0]", "z[2,0]"] {
        zero.insert(v.to_string(), ParamPoly::zero());
    }
    for m in maximal_minors(&jacobian(&z)) {
        assert!(m.substitute(&zero).is_zero());
    }
}

#[test]
fn m11_singular_locus_of_x() {
    // X = {z00 = z10 = z20 = 4 z11² − z01 z21 + z30 z02 = 0}; its Jacobian
    // has rank 4 except on the listed coordinate subspace.
    let x = PolySystem::new(
        11,
        [
            "z[0,0]",
            "z[1,0]",
            "z[2,0]",
            "4*z[1,1]^2 - z[0,1]*z[2,1] + z[3,0]*z[0,2]",
        ]
        .iter()
        .enumerate()
        .map(|(i, s)| LabeledPoly {
            label: Label::f(2, 3 + i, 0),
            poly: p(s),
        })
        .collect(),
    );
    let j = jacobian(&x);
    let last = j.row(3).to_vec();
    let mut zero = BTreeMap::new();
    for v in [
        "z[0,0]", "z[1,0]", "z[2,0]", "z[1,1]", "z[0,1]", "z[2,1]", "z[3,0]", "z[0,2]",
    ] {
        zero.insert(v.to_string(), ParamPoly::zero());
    }
    assert!(last.iter().all(|d| d.substitute(&zero).is_zero()));
    // The gradient of the quadric vanishes only there: its entries are
    // (up to scale) the eight coordinates themselves.
    let grads: Vec<ParamPoly> = last.into_iter().filter(|d| !d.is_zero()).collect();
    assert_eq!(grads.len(), 5);
}

#[test]
fn z_names_parse() {
    assert_eq!("z[3,0]".parse::<VarietyVar>().unwrap(), VarietyVar::z(3, 0));
    assert_eq!("xm1".parse::<VarietyVar>().unwrap(), VarietyVar::XMinus1);
    assert!("y[1,2]".parse::<VarietyVar>().is_err());
}
