//! Independent oracles shared by the integration tests. Nothing in this
//! file calls the library's builders or solvers; formulas are re-derived
//! from their closed forms and linear systems are solved by a separate
//! elimination. `fixtures` holds printed tables, `suites` the property
//! checks that the acceptance run repeats.

#![allow(dead_code)]

pub mod fixtures;
pub mod suites;

use std::collections::BTreeMap;

use maxclass::exactnum::{ParamPoly, Rational};
use maxclass::liealg::GradedAlgebra;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(r: &Rational) -> Q {
    Q::new(r.numer().clone(), r.denom().clone())
}

pub fn from_q(x: &Q) -> Rational {
    Rational::from_bigints(x.numer().clone(), x.denom().clone())
}

/// C(a, b) by the product formula; zero outside 0 ≤ b ≤ a.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}

fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// λ_{r, 2k+t−r} of m^q_{0,s}(2k+s), t ≤ s, from the closed forms:
/// (−1)^{k−r} at t = 1, (−1)^{r−k}(k+1−r) at t = 2, and
/// (−1)^{k−r}(C(k−r+s', k−r) + Σ_{i=1}^{L} (−1)^i C(k−r+s'−i, k−r+i) β_i)
/// with s' = t−1 and L = s'/2 for even s', (s'−1)/2 for odd s'.
pub fn family_constant(k: usize, t: usize, r: usize, betas: &[ParamPoly]) -> ParamPoly {
    let (k, t, r) = (k as i64, t as i64, r as i64);
    match t {
        1 => ParamPoly::int(sgn(k - r)),
        2 => ParamPoly::int(sgn(r - k) * (k + 1 - r)),
        _ => {
            let s = t - 1;
            let l = if s % 2 == 0 { s / 2 } else { (s - 1) / 2 };
            let mut acc = ParamPoly::constant(Rational::from_bigints(binom(k - r + s, k - r), BigInt::one()));
            for i in 1..=l {
                let c = binom(k - r + s - i, k - r + i) * sgn(i);
                acc = &acc + &betas[(i - 1) as usize].scale(&Rational::from_bigints(c, BigInt::one()));
            }
            acc.scale(&Rational::from(sgn(k - r)))
        }
    }
}

/// Structure constants of W^q in the basis with [e_1, e_i] = e_{i+1} and
/// λ_{q,q+1} = 1, derived from [L_i, L_j] = (j−i) L_{i+j}: with
/// e_i = c_i L_i, c_{i+1} = (i−1) c_i, then a rescaling of e_q.
pub fn witt_oracle(q_: usize, i: usize, j: usize) -> Q {
    let c = |m: usize| -> Q {
        // c_q = 1, c_{m+1} = (m−1) c_m
        let mut v = Q::one();
        for x in q_..m {
            v *= Q::from_integer(BigInt::from(x as i64 - 1));
        }
        v
    };
    let raw = |a: usize, b: usize| c(a) * c(b) * Q::from_integer(BigInt::from(b as i64 - a as i64)) / c(a + b);
    raw(i, j) / raw(q_, q_ + 1)
}

/// Reduced row echelon solve of `m x = rhs`: the particular solution with
/// free variables at 0 and one kernel vector per free column, or None
/// when inconsistent.
pub fn solve_affine(m: &[Vec<Q>], rhs: &[Q], ncols: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pr = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut particular = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][f].clone();
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let n = m[0].len();
    let zeros = vec![Q::zero(); m.len()];
    let (_, kernel) = solve_affine(m, &zeros, n).unwrap();
    n - kernel.len()
}

/// Values of every parameter of `a`.
pub type Point = BTreeMap<String, Rational>;

/// λ_{i,j} of `a` at a numeric point.
pub fn lam_at(a: &GradedAlgebra, i: usize, j: usize, pt: &Point) -> Q {
    to_q(&a.lambda(i, j).eval(pt).expect("point binds every parameter"))
}

/// Slots (r, n−r) with 2 ≤ r < n−r, both in the support.
pub fn level_slots(a: &GradedAlgebra, n: usize) -> Vec<usize> {
    a.support()
        .iter()
        .copied()
        .filter(|&r| r >= 2 && r < n - r && a.in_support(n - r))
        .collect()
}

/// Brute-force extension of a numeric algebra (the parameters of `a`
/// evaluated at `pt`) by one degree: every Jacobi triple at the new level
/// is written as a linear equation in the new structure constants and
/// solved directly. Returns the slots and the affine solution set.
pub fn brute_force_extension(a: &GradedAlgebra, pt: &Point) -> (Vec<usize>, Option<(Vec<Q>, Vec<Vec<Q>>)>) {
    let n = a.top() + 1;
    let mut support: Vec<usize> = a.support().to_vec();
    support.push(n);
    let slots: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&r| r >= 2 && r < n - r && support.contains(&(n - r)))
        .collect();
    // λ at the new level: λ(1, n−1) = 1, λ(r, n−r) = u_r (antisymmetric),
    // every other pair lives in `a`.
    enum Val {
        Known(Q),
        Unknown(usize, Q),
    }
    let lam = |x: usize, y: usize| -> Val {
        if x + y < n {
            return Val::Known(lam_at(a, x, y, pt));
        }
        if x + y > n || x == y {
            return Val::Known(Q::zero());
        }
        let (lo, hi, s) = if x < y { (x, y, 1) } else { (y, x, -1) };
        if lo == 1 {
            return Val::Known(Q::from_integer(BigInt::from(if hi == n - 1 { s } else { 0 })));
        }
        match slots.iter().position(|&r| r == lo) {
            Some(c) => Val::Unknown(c, Q::from_integer(BigInt::from(s))),
            None => Val::Known(Q::zero()),
        }
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (ii, &i) in support.iter().enumerate() {
        for (jj, &j) in support.iter().enumerate().skip(ii + 1) {
            for &k in support.iter().skip(jj + 1) {
                if i + j + k != n {
                    continue;
                }
                let mut row = vec![Q::zero(); slots.len()];
                let mut b = Q::zero();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = lam_at(a, x, y, pt);
                    if inner.is_zero() {
                        continue;
                    }
                    match lam(x + y, z) {
                        Val::Known(v) => b -= &inner * v,
                        Val::Unknown(c, s) => row[c] += &inner * s,
                    }
                }
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    let sol = solve_affine(&rows, &rhs, slots.len());
    (slots, sol)
}

/// Whether `v` lies in the affine space `particular + span(kernel)`.
pub fn in_affine(v: &[Q], particular: &[Q], kernel: &[Vec<Q>]) -> bool {
    let d: Vec<Q> = v.iter().zip(particular).map(|(a, b)| a - b).collect();
    if d.iter().all(|x| x.is_zero()) {
        return true;
    }
    if kernel.is_empty() {
        return false;
    }
    // Solve kernel^T c = d.
    let n = kernel.len();
    let m: Vec<Vec<Q>> = (0..d.len())
        .map(|i| (0..n).map(|f| kernel[f][i].clone()).collect())
        .collect();
    solve_affine(&m, &d, n).is_some()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}
