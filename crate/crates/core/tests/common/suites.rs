//! Property checks shared by the property tests and the acceptance run.
//! Each returns a description of the first failure.

use maxclass::exactnum::{ParamPoly, Rational};
use maxclass::extend::extend_once;
use maxclass::liealg::*;
use maxclass::varieties::{assemble_system, gen_f, gen_g, monomial_weights};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use super::{brute_force_extension, in_affine, lam_at, to_q, witt_oracle, Point, Q};

#[derive(Clone, Debug)]
pub enum Instance {
    M0q(usize, usize),
    Mq(usize, usize),
    Witt(usize, usize),
    Family {
        q: usize,
        k: usize,
        s: usize,
        betas: Vec<Rational>,
    },
    Table(FiliformTable, usize),
}

impl Instance {
    pub fn build(&self) -> GradedAlgebra {
        match self {
            Instance::M0q(q, n) => build_m0q(*q, *n).unwrap(),
            Instance::Mq(q, n) => build_mq(*q, *n).unwrap(),
            Instance::Witt(q, n) => build_witt(*q, *n).unwrap(),
            Instance::Family { q, k, s, betas } => {
                let b: Vec<ParamPoly> = betas.iter().cloned().map(ParamPoly::constant).collect();
                build_extension_family(*q, *k, *s, &b).unwrap()
            }
            Instance::Table(t, k) => build_filiform_table(*t, *k).unwrap(),
        }
    }
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

/// q in 3..=6 with degrees up to 2q+16; families with k in q..=q+6, s up to
/// the Lie length and random rational β̄; the filiform tables.
pub fn instance() -> impl Strategy<Value = Instance> {
    let sized = (3usize..=6).prop_flat_map(|q| (Just(q), 2 * q + 1..=2 * q + 16));
    let family = (3usize..=6)
        .prop_flat_map(|q| (Just(q), q..=q + 6))
        .prop_flat_map(|(q, k)| (Just(q), Just(k), 1..=family_lie_length(q, k)))
        .prop_flat_map(|(q, k, s)| {
            let l = if s >= 3 { (s + 1) / 2 - 1 } else { 0 };
            (Just(q), Just(k), Just(s), proptest::collection::vec(rational(), l))
        })
        .prop_map(|(q, k, s, betas)| Instance::Family { q, k, s, betas });
    prop_oneof![
        1 => sized.clone().prop_map(|(q, n)| Instance::M0q(q, n)),
        1 => sized.clone().prop_map(|(q, n)| Instance::Mq(q, n)),
        1 => sized.prop_map(|(q, n)| Instance::Witt(q, n)),
        3 => family,
        1 => prop_oneof![
            (3usize..=8).prop_map(|k| Instance::Table(FiliformTable::M03, k)),
            Just(Instance::Table(FiliformTable::M04_10, 0)),
            Just(Instance::Table(FiliformTable::M05_11, 0)),
        ],
    ]
}

/// Antisymmetry, Jacobi, Leibniz, the Witt oracle and the text round trip.
pub fn check_builder(inst: &Instance) -> Result<(), String> {
    let a = inst.build();
    let sup = a.support().to_vec();
    for &i in &sup {
        for &j in &sup {
            if a.lambda(i, j) != -a.lambda(j, i) || (i + j > a.top() && !a.lambda(i, j).is_zero()) {
                return Err(format!("{:?}: λ({},{}) = {}", inst, i, j, a.lambda(i, j)));
            }
        }
    }
    if let Some(v) = jacobi_check(&a).first() {
        return Err(format!("{:?}: J{:?} = {}", inst, v.triple, v.residual));
    }
    if !verify_leibniz(&a).is_empty() {
        return Err(format!("{:?}: Leibniz fails", inst));
    }
    if let Instance::Witt(q, n) = *inst {
        for &i in sup.iter().filter(|&&i| i >= q) {
            for &j in sup.iter().filter(|&&j| j > i && i + j <= n) {
                if to_q(&a.lambda(i, j).constant_value().unwrap()) != witt_oracle(q, i, j) {
                    return Err(format!("{:?}: λ({},{}) differs from the oracle", inst, i, j));
                }
            }
        }
    }
    if parse_algebra(&emit_algebra(&a)).as_ref() != Ok(&a) {
        return Err(format!("{:?}: text round trip", inst));
    }
    Ok(())
}

/// Every monomial of every F (and x_{−1}G) has weight r and degree 2, every
/// G monomial weight r+1 and degree 1, for the systems up to `max_n`.
pub fn homogeneity_scan(max_n: usize) -> Result<(), String> {
    for n in 9..=max_n {
        let sys = assemble_system(n).map_err(|e| e.to_string())?;
        for lp in &sys.polys {
            let ws = monomial_weights(&lp.poly).map_err(|e| e.to_string())?;
            if ws.is_empty() || ws.iter().any(|&w| w != (lp.label.r, 2)) {
                return Err(format!("n = {}, {}: weights {:?}", n, lp.label, ws));
            }
        }
    }
    for j in 2..max_n {
        for q in j + 1..max_n {
            for r in 0..=max_n.saturating_sub(j + 2 * q + 1) {
                let f = monomial_weights(&gen_f(j, q, r).unwrap()).unwrap();
                let g = monomial_weights(&gen_g(j, q, r as i64 - 1).unwrap()).unwrap();
                if f.iter().any(|&w| w != (r as i64, 2)) || g.iter().any(|&w| w != (r as i64, 1)) {
                    return Err(format!("F/G({},{},{}) not homogeneous", j, q, r));
                }
            }
        }
    }
    Ok(())
}

/// q = 3 starting algebras with top ≤ 11, so every extension has top ≤ 12.
pub fn q3_starts() -> Vec<(String, GradedAlgebra)> {
    let mut out = Vec::new();
    for n in 6..=11 {
        out.push((format!("m0q({})", n), build_m0q(3, n).unwrap()));
    }
    for n in 7..=11 {
        out.push((format!("mq({})", n), build_mq(3, n).unwrap()));
        out.push((format!("witt({})", n), build_witt(3, n).unwrap()));
    }
    for k in 3..=5 {
        for s in 1..=family_lie_length(3, k) {
            if 2 * k + s > 11 {
                break;
            }
            let l = if s >= 3 { (s + 1) / 2 - 1 } else { 0 };
            let betas: Vec<ParamPoly> = (1..=l).map(|i| ParamPoly::var(&format!("b{}", i))).collect();
            out.push((
                format!("family(k={}, s={})", k, s),
                build_extension_family(3, k, s, &betas).unwrap(),
            ));
        }
    }
    out
}

/// 20 points per parametric algebra: 14 random, and 6 on
/// b2 = 4b1²/(3(1+b1)), where the two-parameter family extends past
/// degree 11.
pub fn scan_points(a: &GradedAlgebra, runner: &mut TestRunner) -> Vec<Point> {
    let params = a.params().to_vec();
    if params.is_empty() {
        return vec![Point::new()];
    }
    let strat = proptest::collection::vec(rational(), params.len());
    let mut pts: Vec<Point> = (0..14)
        .map(|_| {
            let vals = strat.new_tree(runner).unwrap().current();
            params.iter().cloned().zip(vals).collect()
        })
        .collect();
    for b1 in [1, 2, 3, -2, 5, 7] {
        let b1 = Rational::new(b1, 3);
        let mut pt: Point = params.iter().map(|p| (p.clone(), Rational::from(1))).collect();
        pt.insert("b1".into(), b1.clone());
        if pt.contains_key("b2") {
            let b2 = &(&Rational::from(4) * &(&b1 * &b1)) / &(&Rational::from(3) * &(&Rational::from(1) + &b1));
            pt.insert("b2".into(), b2);
        }
        pts.push(pt);
    }
    pts
}

/// extend_once on each q = 3 start against a direct solve of every Jacobi
/// triple at the specialized point. Returns how many points extended and
/// how many did not.
pub fn oracle_agreement(runner: &mut TestRunner) -> Result<(usize, usize), String> {
    let (mut consistent, mut inconsistent) = (0, 0);
    for (name, a) in q3_starts() {
        let out = extend_once(&a).map_err(|e| format!("{}: {}", name, e))?;
        let n = out.level;
        for pt in scan_points(&a, runner) {
            let at = || format!("{} at {:?}", name, pt);
            let (slots, sol) = brute_force_extension(&a, &pt);
            let Some(b) = out.algebra.as_ref() else {
                if sol.is_some() {
                    return Err(format!("{}: engine inconsistent, direct solve is not", at()));
                }
                inconsistent += 1;
                continue;
            };
            let mut full = pt.clone();
            for (i, f) in out.fresh_params.iter().enumerate() {
                full.insert(f.clone(), Rational::new(2 * i as i64 + 3, 7));
            }
            let holds = out.constraints.iter().all(|c| c.poly.eval(&full).unwrap().is_zero());
            // Constraints free of fresh parameters decide existence outright.
            let fresh_free = out
                .constraints
                .iter()
                .all(|c| out.fresh_params.iter().all(|f| !c.poly.contains_var(f)));
            if fresh_free && holds != sol.is_some() {
                return Err(format!(
                    "{}: constraints {} but direct solve {}",
                    at(),
                    holds,
                    sol.is_some()
                ));
            }
            if !holds {
                inconsistent += 1;
                continue;
            }
            let Some((particular, kernel)) = sol else {
                return Err(format!("{}: no direct solution", at()));
            };
            if kernel.len() != out.fresh_params.len() {
                return Err(format!(
                    "{}: {} free directions, engine has {}",
                    at(),
                    kernel.len(),
                    out.fresh_params.len()
                ));
            }
            let got: Vec<Q> = slots.iter().map(|&r| lam_at(b, r, n - r, &full)).collect();
            if !in_affine(&got, &particular, &kernel) {
                return Err(format!("{}: engine solution not in the solution set", at()));
            }
            consistent += 1;
        }
    }
    Ok((consistent, inconsistent))
}
