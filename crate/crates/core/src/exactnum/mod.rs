//! Exact scalars, sparse polynomials and fraction-free linear algebra.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod univariate;

pub use matrix::{
    det, solve_constant_pivots, solve_linear, ConstantPivotSolution, MatrixError, RatFunc, RatMatrix, SolveResult,
};
pub use poly::{var_cmp, ParamPoly, ParsePolyError};
pub use rational::{binomial, factorial, Rational};
pub use univariate::{poly_gcd, rational_roots, UnivariateError};
