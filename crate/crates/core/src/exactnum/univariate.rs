use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::ParamPoly;
use super::rational::{bigint_gcd, bigint_lcm, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnivariateError {
    GcdOfZeros,
    ZeroPolynomial,
    NotUnivariate(String),
    MixedVariables(String, String),
}

impl fmt::Display for UnivariateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnivariateError::GcdOfZeros => write!(f, "gcd of zeros undefined"),
            UnivariateError::ZeroPolynomial => write!(f, "zero polynomial has no finite root set"),
            UnivariateError::NotUnivariate(p) => write!(f, "not univariate: {}", p),
            UnivariateError::MixedVariables(a, b) => {
                write!(f, "polynomials in different variables `{}` and `{}`", a, b)
            }
        }
    }
}

impl std::error::Error for UnivariateError {}

/// Dense coefficient vector, index = power, no trailing zeros.
pub type Dense = Vec<Rational>;

fn trim(mut a: Dense) -> Dense {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn to_dense(p: &ParamPoly) -> Result<(Option<String>, Dense), UnivariateError> {
    if let Some(c) = p.constant_value() {
        return Ok((None, trim(vec![c])));
    }
    let v = p
        .univariate_var()
        .ok_or_else(|| UnivariateError::NotUnivariate(p.to_string()))?
        .to_string();
    let cs = p.coefficients_in(&v);
    let dense = cs
        .iter()
        .map(|c| c.constant_value().unwrap_or_else(Rational::zero))
        .collect();
    Ok((Some(v), trim(dense)))
}

pub fn from_dense(var: &str, a: &[Rational]) -> ParamPoly {
    let x = ParamPoly::var(var);
    let mut acc = ParamPoly::zero();
    for c in a.iter().rev() {
        acc = &(&acc * &x) + &ParamPoly::constant(c.clone());
    }
    acc
}

/// Polynomial remainder `a mod b` over the rationals (b nonzero).
pub fn dense_rem(a: &[Rational], b: &[Rational]) -> Dense {
    dense_divmod(a, b).1
}

pub fn dense_divmod(a: &[Rational], b: &[Rational]) -> (Dense, Dense) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() * &lead_inv;
        for (k, c) in b.iter().enumerate() {
            let v = c * &f;
            r[shift + k] -= &v;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn dense_monic(a: Dense) -> Dense {
    match a.last().and_then(|c| c.inv()) {
        Some(inv) => a.iter().map(|c| c * &inv).collect(),
        None => a,
    }
}

pub fn dense_gcd(a: &[Rational], b: &[Rational]) -> Dense {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    dense_monic(x)
}

pub fn dense_eval(a: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in a.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn shared_var(a: &Option<String>, b: &Option<String>) -> Result<Option<String>, UnivariateError> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(UnivariateError::MixedVariables(x.clone(), y.clone())),
        (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
        (None, None) => Ok(None),
    }
}

/// Monic greatest common divisor of two univariate polynomials.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> Result<ParamPoly, UnivariateError> {
    if a.is_zero() && b.is_zero() {
        return Err(UnivariateError::GcdOfZeros);
    }
    let (va, da) = to_dense(a)?;
    let (vb, db) = to_dense(b)?;
    let v = shared_var(&va, &vb)?;
    let g = dense_gcd(&da, &db);
    Ok(match v {
        Some(v) => from_dense(&v, &g),
        None => from_dense("x", &g),
    })
}

/// Exact quotient of univariate polynomials, `None` if not divisible.
pub fn poly_div_exact(a: &ParamPoly, b: &ParamPoly) -> Option<ParamPoly> {
    a.div_exact(b)
}

fn integer_coefficients(a: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in a {
        lcm = bigint_lcm(&lcm, c.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = bigint_gcd(&g, c);
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All distinct rational roots, ascending.
pub fn rational_roots(p: &ParamPoly) -> Result<Vec<Rational>, UnivariateError> {
    if p.is_zero() {
        return Err(UnivariateError::ZeroPolynomial);
    }
    let (_, dense) = to_dense(p)?;
    Ok(dense_rational_roots(&dense))
}

pub fn dense_rational_roots(dense: &[Rational]) -> Vec<Rational> {
    let mut roots = Vec::new();
    let shift = dense.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Rational::zero());
    }
    let reduced = &dense[shift..];
    if reduced.len() > 1 {
        let ints = integer_coefficients(reduced);
        let trailing = ints.first().unwrap();
        let leading = ints.last().unwrap();
        let limit = BigInt::from(10_000_000_000i64);
        if trailing.abs() > limit || leading.abs() > limit {
            roots.extend(isolated_rational_roots(reduced));
            roots.sort();
            roots.dedup();
            return roots;
        }
        let ps = divisors(trailing);
        let qs = divisors(leading);
        for pn in &ps {
            for qd in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::from_bigints(pn * BigInt::from(sign), qd.clone());
                    if dense_eval(reduced, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn dense_derivative(a: &[Rational]) -> Dense {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &Rational::from(k as i64))
        .collect()
}

fn sign_changes(chain: &[Dense], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in chain {
        let v = dense_eval(s, x);
        let sg = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if sg != 0 {
            if last != 0 && sg != last {
                n += 1;
            }
            last = sg;
        }
    }
    n
}

fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// The rational with the smallest denominator in the closed interval [a, b].
fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    if !a.is_negative() {
        let fl = floor(a);
        let fr = Rational::from(fl.clone());
        if &fr == a {
            return fr;
        }
        let next = Rational::from(fl + 1);
        if &next <= b {
            return next;
        }
        let lo = (b - &fr).inv().unwrap();
        let hi = (a - &fr).inv().unwrap();
        return &fr + &simplest_between(&lo, &hi).inv().unwrap();
    }
    Rational::zero()
}

/// Rational roots without factoring the end coefficients: real roots of the
/// square-free part are isolated with a Sturm chain, each interval is shrunk
/// below 1/lead^2 and the simplest rational inside is tested exactly.
fn isolated_rational_roots(a: &[Rational]) -> Vec<Rational> {
    let a = trim(a.to_vec());
    let g = dense_gcd(&a, &dense_derivative(&a));
    let f = dense_divmod(&a, &g).0;
    let f: Dense = integer_coefficients(&f).into_iter().map(Rational::from).collect();
    let lead = f.last().unwrap().abs();
    let mut chain = vec![f.clone(), dense_derivative(&f)];
    loop {
        let n = chain.len();
        let r = dense_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let mut bound = Rational::one();
    for c in &f[..f.len() - 1] {
        let v = &c.abs() / &lead;
        if v > bound {
            bound = v;
        }
    }
    bound = &bound + &Rational::one();
    let width = (&lead * &lead * Rational::from(2)).inv().unwrap();
    let mut out = Vec::new();
    let mut stack = vec![(-&bound, bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo < width {
            let cand = simplest_between(&lo, &hi);
            if dense_eval(&f, &cand).is_zero() {
                out.push(cand);
            }
            continue;
        }
        let mid = &(&lo + &hi) / &Rational::from(2);
        if dense_eval(&f, &mid).is_zero() {
            out.push(mid.clone());
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out
}

/// Removes every rational root factor; what is left has no rational roots.
pub fn strip_rational_roots(dense: &[Rational], roots: &[Rational]) -> Dense {
    let mut rest = trim(dense.to_vec());
    for r in roots {
        let lin = vec![-r, Rational::one()];
        loop {
            let (q, rem) = dense_divmod(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
        }
    }
    dense_monic(rest)
}
