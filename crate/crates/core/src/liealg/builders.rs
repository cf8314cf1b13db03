use num_bigint::BigInt;

use super::{natural_support, AlgebraError, GradedAlgebra};
use crate::exactnum::{binomial, factorial, ParamPoly, Rational};

/// m^q_0(n): only the brackets with e_1 are nonzero.
pub fn build_m0q(q: usize, n: usize) -> Result<GradedAlgebra, AlgebraError> {
    if q < 2 {
        return Err(AlgebraError::Precondition(format!("q = {} < 2", q)));
    }
    if n <= q {
        return Err(AlgebraError::Precondition(format!(
            "m0q needs n > q, got n = {}, q = {}",
            n, q
        )));
    }
    Ok(GradedAlgebra::with_natural_support(q, n))
}

/// m_q(n): additionally [e_q, e_i] = e_{q+i} for i ≥ q+1.
pub fn build_mq(q: usize, n: usize) -> Result<GradedAlgebra, AlgebraError> {
    if q < 2 || n < 2 * q + 1 {
        return Err(AlgebraError::Precondition(format!(
            "mq needs q ≥ 2 and n ≥ 2q+1, got q = {}, n = {}",
            q, n
        )));
    }
    let mut a = GradedAlgebra::with_natural_support(q, n);
    for i in q + 1..=n - q {
        a.set(q, i, ParamPoly::one())?;
    }
    Ok(a)
}

/// Normalizing constant of the Witt truncation: λ_{q,q+1} = 1 forces
/// C = (2q−1)! / ((q−2)! (q−1)!), which is 60 for q = 3.
pub fn witt_constant(q: usize) -> Rational {
    let q = q as u64;
    Rational::from_bigints(factorial(2 * q - 1), factorial(q - 2) * factorial(q - 1))
}

/// W^q(n) in the basis with [e_1, e_i] = e_{i+1}:
/// λ_{i,j} = C (i−2)! (j−2)! (j−i) / (i+j−2)!.
pub fn build_witt(q: usize, n: usize) -> Result<GradedAlgebra, AlgebraError> {
    if q < 2 || n < 2 * q + 1 {
        return Err(AlgebraError::Precondition(format!(
            "witt needs q ≥ 2 and n ≥ 2q+1, got q = {}, n = {}",
            q, n
        )));
    }
    let c = witt_constant(q);
    let mut a = GradedAlgebra::with_natural_support(q, n);
    for i in q..=n {
        for j in i + 1..=n {
            if i + j > n {
                break;
            }
            let num = factorial(i as u64 - 2) * factorial(j as u64 - 2) * BigInt::from(j - i);
            let v = &c * &Rational::from_bigints(num, factorial((i + j - 2) as u64));
            a.set(i, j, ParamPoly::constant(v))?;
        }
    }
    Ok(a)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// λ_{r, N−r} of m^q_{0,s}(2k+s) at level N = 2k + t (t ≥ 1), from the
/// normalized tables at t = 1, 2 and the binomial recursion for t ≥ 3,
/// which uses β_1 … β_{⌊(t−1)/2⌋}.
pub fn family_level_constant(k: usize, t: usize, r: usize, betas: &[ParamPoly]) -> ParamPoly {
    let (k, t, r) = (k as i64, t as i64, r as i64);
    let sg = sign(k - r);
    match t {
        1 => ParamPoly::int(sg),
        2 => ParamPoly::int(sg * (k + 1 - r)),
        _ => {
            let s = t - 1;
            let l = ((t - 1) / 2) as usize;
            let mut acc = ParamPoly::constant(Rational::from(binomial(k - r + s, k - r)));
            for (idx, beta) in betas.iter().take(l).enumerate() {
                let i = idx as i64 + 1;
                let c = Rational::from(binomial(k - r + s - i, k - r + i) * BigInt::from(sign(i)));
                acc = &acc + &beta.scale(&c);
            }
            acc.scale(&Rational::from(sg))
        }
    }
}

/// Largest s for which m^q_{0,s}(2k+s; β̄) satisfies the Jacobi identity
/// for every β̄. Past it the remaining triples pin the parameters, and
/// only the [e_1, ·] relations hold in general.
pub fn family_lie_length(q: usize, k: usize) -> usize {
    if k == q {
        q + 2
    } else {
        q
    }
}

/// m^q_{0,s}(2k+s; β̄) on the support {1, q, …, 2k+s}.
pub fn build_extension_family(
    q: usize,
    k: usize,
    s: usize,
    betas: &[ParamPoly],
) -> Result<GradedAlgebra, AlgebraError> {
    if q < 3 || k < q {
        return Err(AlgebraError::Precondition(format!(
            "family needs q ≥ 3 and k ≥ q, got q = {}, k = {}",
            q, k
        )));
    }
    let needed = if s >= 3 { (s + 1) / 2 - 1 } else { 0 };
    if betas.len() != needed {
        return Err(AlgebraError::Precondition(format!(
            "m^q_(0,{}) takes {} parameters, got {}",
            s,
            needed,
            betas.len()
        )));
    }
    let top = 2 * k + s;
    let mut a = GradedAlgebra::new(q, top, natural_support(q, top))?;
    for t in 1..=s {
        let n = 2 * k + t;
        for r in q..n {
            if r >= n - r {
                break;
            }
            a.set(r, n - r, family_level_constant(k, t, r, betas))?;
        }
    }
    Ok(a)
}

/// Fixed multiplication tables of graded filiform algebras with support
/// {1, …, n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiliformTable {
    M03,
    M04_10,
    M05_11,
}

impl std::str::FromStr for FiliformTable {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<FiliformTable, AlgebraError> {
        match s {
            "m03" => Ok(FiliformTable::M03),
            "m04_10" => Ok(FiliformTable::M04_10),
            "m05_11" => Ok(FiliformTable::M05_11),
            other => Err(AlgebraError::Precondition(format!("unknown table `{}`", other))),
        }
    }
}

fn set_int(a: &mut GradedAlgebra, i: usize, j: usize, num: i64, den: i64) -> Result<(), AlgebraError> {
    a.set(i, j, ParamPoly::constant(Rational::new(num, den)))
}

/// m_{0,3}(2k+3) for the given k, or the fixed tables m_{0,4}(10), m_{0,5}(11).
pub fn build_filiform_table(name: FiliformTable, k: usize) -> Result<GradedAlgebra, AlgebraError> {
    match name {
        FiliformTable::M03 => {
            if k < 3 {
                return Err(AlgebraError::Precondition(format!("m03 needs k ≥ 3, got {}", k)));
            }
            let n = 2 * k + 3;
            let mut a = GradedAlgebra::with_natural_support(2, n);
            let ki = k as i64;
            for l in 2..=k {
                set_int(&mut a, l, 2 * k + 1 - l, sign(l as i64 + 1), 1)?;
            }
            for j in 2..=k {
                let ji = j as i64;
                set_int(&mut a, j, 2 * k + 2 - j, sign(ji + 1) * (ki - ji + 1), 1)?;
            }
            for m in 3..=k + 1 {
                let mi = m as i64;
                let v = (mi - 2) * ki - (mi - 2) * (mi - 1) / 2;
                set_int(&mut a, m, 2 * k + 3 - m, sign(mi) * v, 1)?;
            }
            Ok(a)
        }
        FiliformTable::M04_10 | FiliformTable::M05_11 => {
            let n = if name == FiliformTable::M04_10 { 10 } else { 11 };
            let mut a = GradedAlgebra::with_natural_support(2, n);
            let table: &[(usize, usize, i64, i64)] = &[
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
            for &(i, j, num, den) in table {
                set_int(&mut a, i, j, num, den)?;
            }
            if n == 11 {
                for &(i, j, num, den) in &[(3, 8, 5, 2), (2, 9, 5, 2), (4, 7, -15, 2), (5, 6, 21, 2)] {
                    set_int(&mut a, i, j, num, den)?;
                }
            }
            Ok(a)
        }
    }
}
