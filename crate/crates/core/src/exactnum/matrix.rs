use std::collections::BTreeMap;
use std::fmt;

use super::poly::ParamPoly;
use super::rational::Rational;

/// Dense matrix of polynomial entries; rational matrices are the
/// parameter-free special case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ParamPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    DimensionMismatch { expected: usize, found: usize },
    NotSquare { rows: usize, cols: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {} rows, found {}", expected, found)
            }
            MatrixError::NotSquare { rows, cols } => write!(f, "matrix is {}x{}, not square", rows, cols),
        }
    }
}

impl std::error::Error for MatrixError {}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            entries: vec![ParamPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ParamPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ParamPoly>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> RatMatrix {
        RatMatrix::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(ParamPoly::constant).collect())
                .collect(),
        )
    }

    pub fn from_ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| ParamPoly::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ParamPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ParamPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ParamPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Entrywise evaluation at rational parameter values.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> RatMatrix {
        let b: BTreeMap<String, ParamPoly> = point
            .iter()
            .map(|(k, v)| (k.clone(), ParamPoly::constant(v.clone())))
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.substitute(&b)).collect(),
        }
    }

    /// Rank over the fraction field of the coefficient ring (the exact rank
    /// for parameter-free matrices).
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<ParamPoly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        fraction_free_echelon(&mut work, self.cols).pivots.len()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Quotient of two polynomials, kept reduced whenever the division is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    pub num: ParamPoly,
    pub den: ParamPoly,
}

impl RatFunc {
    pub fn new(num: ParamPoly, den: ParamPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::poly(ParamPoly::zero());
        }
        if let Some(q) = num.div_exact(&den) {
            return RatFunc::poly(q);
        }
        let lc = den.leading_coeff().inv().unwrap();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn poly(p: ParamPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == ParamPoly::one()
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&RatFunc {
            num: -&o.num,
            den: o.den.clone(),
        })
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Outcome of a parametric linear solve. Every pivot that is not a
/// constant is listed in `genericity`: the answer holds where those
/// polynomials do not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Unique {
        solution: Vec<RatFunc>,
        genericity: Vec<ParamPoly>,
    },
    /// `x = particular + sum_f t_f * kernel[f]` for the free columns `free`.
    FreeVariables {
        free: Vec<usize>,
        particular: Vec<RatFunc>,
        kernel: Vec<Vec<RatFunc>>,
        genericity: Vec<ParamPoly>,
    },
    Inconsistent {
        residuals: Vec<ParamPoly>,
        genericity: Vec<ParamPoly>,
    },
}

pub(crate) struct Echelon {
    pub pivots: Vec<(usize, usize)>,
    pub genericity: Vec<ParamPoly>,
    pub sign_flips: usize,
}

fn pivot_rank(p: &ParamPoly) -> (bool, usize, u32) {
    (!p.is_constant(), p.num_terms(), p.total_degree())
}

/// Fraction-free (Bareiss) row echelon form over the first `ncols` columns;
/// extra columns ride along. Constant pivots are preferred.
pub(crate) fn fraction_free_echelon(a: &mut [Vec<ParamPoly>], ncols: usize) -> Echelon {
    let m = a.len();
    let width = a.first().map_or(0, |r| r.len());
    let mut prev = ParamPoly::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut genericity = Vec::new();
    let mut sign_flips = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let choice = (r..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| pivot_rank(&a[i][col]));
        let p = match choice {
            Some(p) => p,
            None => continue,
        };
        if p != r {
            a.swap(p, r);
            sign_flips += 1;
        }
        let piv = a[r][col].clone();
        if !piv.is_constant() {
            genericity.push(piv.clone());
        }
        for i in r + 1..m {
            let f = a[i][col].clone();
            for j in col..width {
                let v = &(&piv * &a[i][j]) - &(&f * &a[r][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = piv;
        pivots.push((r, col));
        r += 1;
    }
    Echelon {
        pivots,
        genericity,
        sign_flips,
    }
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &RatMatrix) -> Result<ParamPoly, MatrixError> {
    if m.rows != m.cols {
        return Err(MatrixError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(ParamPoly::one());
    }
    let mut work: Vec<Vec<ParamPoly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let e = fraction_free_echelon(&mut work, n);
    if e.pivots.len() < n {
        return Ok(ParamPoly::zero());
    }
    let d = work[n - 1][n - 1].clone();
    Ok(if e.sign_flips % 2 == 1 { -d } else { d })
}

/// Solves `m x = rhs` over the polynomial ring with fraction-free
/// elimination; see [`SolveResult`].
pub fn solve_linear(m: &RatMatrix, rhs: &[ParamPoly]) -> Result<SolveResult, MatrixError> {
    if m.rows != rhs.len() {
        return Err(MatrixError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let n = m.cols;
    let mut work: Vec<Vec<ParamPoly>> = (0..m.rows)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let e = fraction_free_echelon(&mut work, n);
    let rank = e.pivots.len();
    let residuals: Vec<ParamPoly> = work[rank..]
        .iter()
        .map(|row| row[n].clone())
        .filter(|r| !r.is_zero())
        .collect();
    if !residuals.is_empty() {
        return Ok(SolveResult::Inconsistent {
            residuals,
            genericity: e.genericity,
        });
    }
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();

    let back = |rhs_col: Option<usize>, free_values: &BTreeMap<usize, RatFunc>| -> Vec<RatFunc> {
        let mut x: Vec<RatFunc> = vec![RatFunc::poly(ParamPoly::zero()); n];
        for (c, v) in free_values {
            x[*c] = v.clone();
        }
        for &(r, c) in e.pivots.iter().rev() {
            let mut acc = match rhs_col {
                Some(k) => RatFunc::poly(work[r][k].clone()),
                None => RatFunc::poly(ParamPoly::zero()),
            };
            for j in c + 1..n {
                if work[r][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc = acc.sub(&RatFunc::poly(work[r][j].clone()).mul(&x[j]));
            }
            x[c] = acc.div(&RatFunc::poly(work[r][c].clone()));
        }
        x
    };

    let particular = back(Some(n), &BTreeMap::new());
    if free.is_empty() {
        return Ok(SolveResult::Unique {
            solution: particular,
            genericity: e.genericity,
        });
    }
    let kernel = free
        .iter()
        .map(|&f| {
            let mut fv = BTreeMap::new();
            fv.insert(f, RatFunc::poly(ParamPoly::one()));
            back(None, &fv)
        })
        .collect();
    Ok(SolveResult::FreeVariables {
        free,
        particular,
        kernel,
        genericity: e.genericity,
    })
}

/// Gauss-Jordan elimination that pivots only on nonzero constants, so no
/// genericity assumption is ever made. Columns without a constant pivot are
/// free: `x = particular + sum_f t_f * kernel[f]`; rows that found no pivot
/// are returned reduced (zero in every pivot column) in `leftover`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantPivotSolution {
    pub pivot_cols: Vec<usize>,
    pub free: Vec<usize>,
    pub particular: Vec<ParamPoly>,
    pub kernel: Vec<Vec<ParamPoly>>,
    pub leftover: Vec<(Vec<ParamPoly>, ParamPoly)>,
}

pub fn solve_constant_pivots(m: &RatMatrix, rhs: &[ParamPoly]) -> Result<ConstantPivotSolution, MatrixError> {
    if m.rows != rhs.len() {
        return Err(MatrixError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let n = m.cols;
    let mut rows: Vec<(Vec<ParamPoly>, ParamPoly)> = (0..m.rows).map(|i| (m.row(i).to_vec(), rhs[i].clone())).collect();
    let mut used = vec![false; rows.len()];
    let mut pivot_of: Vec<Option<usize>> = vec![None; n];
    for c in 0..n {
        let p = (0..rows.len()).find(|&i| !used[i] && rows[i].0[c].constant_value().map_or(false, |v| !v.is_zero()));
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        used[p] = true;
        pivot_of[c] = Some(p);
        let inv = rows[p].0[c].constant_value().unwrap().inv().unwrap();
        let prow = (
            rows[p].0.iter().map(|e| e.scale(&inv)).collect::<Vec<_>>(),
            rows[p].1.scale(&inv),
        );
        for i in 0..rows.len() {
            if i == p || rows[i].0[c].is_zero() {
                continue;
            }
            let f = rows[i].0[c].clone();
            for j in 0..n {
                if !prow.0[j].is_zero() {
                    rows[i].0[j] = &rows[i].0[j] - &(&f * &prow.0[j]);
                }
            }
            rows[i].1 = &rows[i].1 - &(&f * &prow.1);
        }
        rows[p] = prow;
    }
    let pivot_cols: Vec<usize> = (0..n).filter(|&c| pivot_of[c].is_some()).collect();
    let free: Vec<usize> = (0..n).filter(|&c| pivot_of[c].is_none()).collect();
    let mut particular = vec![ParamPoly::zero(); n];
    let mut kernel = vec![vec![ParamPoly::zero(); n]; free.len()];
    for (fi, &f) in free.iter().enumerate() {
        kernel[fi][f] = ParamPoly::one();
    }
    for &c in &pivot_cols {
        let r = &rows[pivot_of[c].unwrap()];
        particular[c] = r.1.clone();
        for (fi, &f) in free.iter().enumerate() {
            kernel[fi][c] = -&r.0[f];
        }
    }
    let leftover = (0..rows.len()).filter(|&i| !used[i]).map(|i| rows[i].clone()).collect();
    Ok(ConstantPivotSolution {
        pivot_cols,
        free,
        particular,
        kernel,
        leftover,
    })
}
