mod common;

use maxclass::exactnum::ParamPoly;
use maxclass::extend::*;
use maxclass::liealg::*;

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn odd_dimension_extends_uniquely_by_zero() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            let a = build_m0q(q, 2 * k + 1).unwrap();
            let out = extend_once(&a).unwrap();
            assert_eq!(out.kind, ExtensionKind::Unique, "q = {}, k = {}", q, k);
            let b = out.algebra.unwrap();
            assert_eq!(b, build_m0q(q, 2 * k + 2).unwrap());
            assert!(out.constraints.is_empty() && out.pinned.is_empty());
        }
    }
}

#[test]
fn even_dimension_gives_a_sign_alternating_family() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            let out = extend_once(&build_m0q(q, 2 * k).unwrap()).unwrap();
            assert_eq!(out.kind, ExtensionKind::OneParamFamily, "q = {}, k = {}", q, k);
            assert_eq!(out.fresh_params.len(), 1);
            let beta = ParamPoly::var(&out.fresh_params[0]);
            let b = out.algebra.unwrap();
            for r in q..=k {
                let want = beta.scale(&sign(k as i64 - r as i64).into());
                assert_eq!(b.lambda(r, 2 * k + 1 - r), want, "q = {}, k = {}, r = {}", q, k, r);
            }
        }
    }
}

#[test]
fn m0q_9_and_8_examples() {
    let u = extend_once(&build_m0q(3, 9).unwrap()).unwrap();
    assert_eq!(u.kind, ExtensionKind::Unique);
    assert!(u.algebra.unwrap().constants().values().all(|v| v.is_zero()));

    let f = extend_once(&build_m0q(3, 8).unwrap()).unwrap();
    assert_eq!(f.kind, ExtensionKind::OneParamFamily);
    assert_eq!(f.fresh_params, vec!["b1".to_string()]);
    let b = f.algebra.unwrap();
    assert_eq!(b.lambda(3, 6), "-b1".parse().unwrap());
    assert_eq!(b.lambda(4, 5), "b1".parse().unwrap());
}

#[test]
fn second_step_is_linear_in_distance_to_k() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            let a = build_extension_family(q, k, 1, &[]).unwrap();
            let out = extend_once(&a).unwrap();
            assert_eq!(out.kind, ExtensionKind::Unique);
            let b = out.algebra.unwrap();
            for r in q..=k {
                let want = sign(r as i64 - k as i64) * (k as i64 + 1 - r as i64);
                assert_eq!(
                    b.lambda(r, 2 * k + 2 - r),
                    ParamPoly::int(want),
                    "q = {}, k = {}, r = {}",
                    q,
                    k,
                    r
                );
            }
            // r = k+1 would pair e_{k+1} with itself.
            assert!(b.lambda(k + 1, k + 1).is_zero());
        }
    }
}

/// Runs the [e_1, ·] recursion from m^q_{0,1}(2k+1) up to level 2k+s and
/// compares every level against the closed formulas, with β_i read off as
/// λ_{k+i,k+i+1} of the engine's algebra.
fn check_family(q: usize, k: usize, s: usize) -> Result<(), String> {
    let mut a = build_extension_family(q, k, 1, &[]).unwrap();
    let mut betas: Vec<ParamPoly> = Vec::new();
    for t in 2..=s {
        let step = extend_by_recursion(&a);
        a = step.algebra;
        let n = 2 * k + t;
        if t % 2 == 1 {
            if step.fresh_params.len() != 1 {
                return Err(format!("level {}: {} fresh parameters", n, step.fresh_params.len()));
            }
            let i = (t - 1) / 2;
            betas.push(a.lambda(k + i, k + i + 1));
        } else if !step.fresh_params.is_empty() {
            return Err(format!("level {}: unexpected fresh parameter", n));
        }
    }
    for t in 1..=s {
        let n = 2 * k + t;
        for r in q..n {
            if 2 * r >= n {
                break;
            }
            let want = common::family_constant(k, t, r, &betas);
            let got = a.lambda(r, n - r);
            if got != want {
                return Err(format!("λ({},{}) = {}, expected {}", r, n - r, got, want));
            }
        }
    }
    Ok(())
}

#[test]
fn binomial_family_formulas() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            for s in 1..=2 * q {
                if let Err(e) = check_family(q, k, s) {
                    panic!("q = {}, k = {}, s = {}: {}", q, k, s, e);
                }
            }
        }
    }
}

#[test]
fn builder_matches_oracle() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            for s in 1..=2 * q {
                let l = if s >= 3 { (s + 1) / 2 - 1 } else { 0 };
                let betas: Vec<ParamPoly> = (1..=l).map(|i| ParamPoly::var(&format!("b{}", i))).collect();
                let a = build_extension_family(q, k, s, &betas).unwrap();
                for t in 1..=s {
                    let n = 2 * k + t;
                    for r in (q..n).take_while(|r| 2 * r < n) {
                        assert_eq!(a.lambda(r, n - r), common::family_constant(k, t, r, &betas));
                    }
                }
            }
        }
    }
}

#[test]
fn extend_once_agrees_with_recursion_in_lie_range() {
    for q in 3..=5 {
        for k in q..=q + 6 {
            let mut a = build_extension_family(q, k, 1, &[]).unwrap();
            for _ in 2..=family_lie_length(q, k) {
                let out = extend_once(&a).unwrap();
                let rec = extend_by_recursion(&a);
                assert!(
                    out.pinned.is_empty() && out.constraints.is_empty(),
                    "q = {}, k = {}",
                    q,
                    k
                );
                assert_eq!(out.algebra.as_ref(), Some(&rec.algebra));
                a = rec.algebra;
            }
            assert!(jacobi_check(&a).is_empty());
            assert!(verify_leibniz(&a).is_empty());
        }
    }
}

#[test]
fn leibniz_holds_past_lie_range() {
    let mut a = build_extension_family(4, 6, 1, &[]).unwrap();
    for _ in 2..=8 {
        a = extend_by_recursion(&a).algebra;
    }
    assert!(verify_leibniz(&a).is_empty());
    assert!(!jacobi_check(&a).is_empty());
}

#[test]
fn free_slot_only_at_odd_levels() {
    for q in 3..=5 {
        for n in 2 * q..=26 {
            let step = extend_by_recursion(&build_m0q(q, n).unwrap());
            assert_eq!(step.fresh_params.len(), (n + 1) % 2, "q = {}, n = {}", q, n);
        }
    }
}

#[test]
fn non_lie_input_is_rejected() {
    let mut a = build_m0q(3, 9).unwrap();
    a.set(3, 4, ParamPoly::one()).unwrap();
    assert!(matches!(extend_once(&a), Err(ExtendError::NotLie(_))));
    assert!(matches!(
        extend_chain(&build_m0q(3, 9).unwrap(), 0),
        Err(ExtendError::ZeroSteps)
    ));
}
