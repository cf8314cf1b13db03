//! Printed tables and polynomials, typed in by hand.

use maxclass::exactnum::{ParamPoly, Rational};
use maxclass::liealg::GradedAlgebra;
use maxclass::varieties::{proportional, VarietyVar};

/// Polynomial with x_{a,t} written `x[a,t]` and x_{−1} as `xm1`.
pub fn p(s: &str) -> ParamPoly {
    s.parse().unwrap()
}

pub const F230: &str = "2*x[2,0]*x[4,0] - 3*x[3,0]^2 + x[3,0]*x[4,0]";
pub const F231: &str = "-2*x[2,0]*x[4,1] + 7*x[3,0]*x[3,1] - x[3,0]*x[4,1] - 3*x[4,0]*x[2,1] - 3*x[4,0]*x[3,1]";
pub const F240: &str = "-2*x[2,0]*x[5,0] + 4*x[3,0]*x[4,0] - 6*x[4,0]^2 + x[3,0]*x[5,0] + x[4,0]*x[5,0]";
pub const F232: &str = "-2*x[2,0]*x[4,2] + 8*x[3,0]*x[3,2] - x[3,0]*x[4,2] - 4*x[4,0]*x[2,2] - 6*x[4,0]*x[3,2] \
                        + 2*x[5,0]*x[2,2] + x[5,0]*x[3,2] - 3*x[2,1]*x[4,1] + 4*x[3,1]^2 - 3*x[3,1]*x[4,1]";
pub const XG231: &str = "xm1*(2*x[2,2] + x[3,2])";
pub const XG24M1: &str = "xm1*(2*x[2,0] - x[3,0] - x[4,0])";

pub const M10_0_Z: [&str; 2] = [
    "z[0,0]*z[2,0] - 3*z[1,0]^2",
    "-z[0,0]*z[2,1] + 7*z[1,0]*z[1,1] - z[2,0]*z[0,1]",
];
pub const M10_1_Z: [&str; 3] = [
    "z[0,0]*z[2,0] - 3*z[1,0]^2",
    "-z[0,0]*z[2,1] + 7*z[1,0]*z[1,1] - z[2,0]*z[0,1] + xm1*z[1,2]",
    "z[0,0] - 2*z[1,0] - z[2,0]",
];
/// M^(1)_10 after eliminating z_{0,0} = 2z_{1,0} + z_{2,0}.
pub const M10_1_PRESENTATION: [&str; 2] = [
    "(3*z[1,0] + z[2,0])*(z[1,0] - z[2,0])",
    "(2*z[1,0] + z[2,0])*z[2,1] - 7*z[1,0]*z[1,1] + z[2,0]*z[0,1] - xm1*z[1,2]",
];
pub const M11_Z: [&str; 4] = [
    "z[0,0]*z[2,0] - 3*z[1,0]^2",
    "-z[0,0]*z[2,1] + 7*z[1,0]*z[1,1] - z[2,0]*z[0,1]",
    "z[3,0]*(2*z[1,0] - z[0,0] + z[2,0]) + z[2,0]*(16*z[1,0] - 6*z[0,0])",
    "-z[0,0]*z[2,2] - z[0,1]*z[2,1] + 4*z[1,1]^2 + 8*z[1,0]*z[1,2] + 4*z[2,0]*(z[0,2] - z[1,2]) + z[3,0]*z[0,2]",
];

/// m_{0,4}(10); every bracket not listed (besides [e_1, ·]) is 0.
pub const M04_10: &[(usize, usize, i64, i64)] = &[
    (2, 5, -1, 1),
    (3, 4, 1, 1),
    (2, 6, -2, 1),
    (3, 5, 1, 1),
    (3, 6, -2, 1),
    (4, 5, 3, 1),
    (4, 6, 3, 1),
    (3, 7, -5, 1),
    (2, 8, 5, 1),
];

/// m_{0,5}(11) adds level 11.
pub const M05_11_TOP: &[(usize, usize, i64, i64)] = &[(3, 8, 5, 2), (2, 9, 5, 2), (4, 7, -15, 2), (5, 6, 21, 2)];

pub fn typed(n: usize, entries: &[&[(usize, usize, i64, i64)]]) -> GradedAlgebra {
    let mut a = GradedAlgebra::with_natural_support(2, n);
    for table in entries {
        for &(i, j, num, den) in *table {
            a.set(i, j, ParamPoly::constant(Rational::new(num, den))).unwrap();
        }
    }
    a
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// m_{0,3}(2k+3) from its three printed families of brackets.
pub fn m03_typed(k: usize) -> GradedAlgebra {
    let n = 2 * k + 3;
    let mut a = GradedAlgebra::with_natural_support(2, n);
    let ki = k as i64;
    for l in 2..=k {
        a.set(l, 2 * k + 1 - l, ParamPoly::int(sign(l as i64 + 1))).unwrap();
    }
    for j in 2..=k {
        let ji = j as i64;
        a.set(j, 2 * k + 2 - j, ParamPoly::int(sign(ji + 1) * (ki - ji + 1)))
            .unwrap();
    }
    for m in 3..=k + 1 {
        let mi = m as i64;
        let v = (mi - 2) * ki - (mi - 2) * (mi - 1) / 2;
        a.set(m, 2 * k + 3 - m, ParamPoly::int(sign(mi) * v)).unwrap();
    }
    a
}

/// Keeps only the monomials all of whose variables have weight `w`, computed
/// from the variable names rather than through `restrict`.
pub fn keep_weight(f: &ParamPoly, w: i64) -> ParamPoly {
    let mut acc = ParamPoly::zero();
    for (c, m) in f.terms() {
        if m.iter().all(|(v, _)| v.parse::<VarietyVar>().unwrap().weight() == w) {
            let mono = m
                .iter()
                .fold(ParamPoly::one(), |a, (v, e)| &a * &ParamPoly::var(v).pow(*e));
            acc = &acc + &mono.scale(&c);
        }
    }
    acc
}

/// Same polynomials up to per-polynomial scale, in any order.
pub fn proportional_list(got: &[ParamPoly], want: &[ParamPoly]) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!("{} polynomials, expected {}", got.len(), want.len()));
    }
    let mut used = vec![false; got.len()];
    for w in want {
        match (0..got.len()).find(|&i| !used[i] && proportional(&got[i], w)) {
            Some(i) => used[i] = true,
            None => return Err(format!("no match for {}", w)),
        }
    }
    Ok(())
}
