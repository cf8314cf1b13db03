//! Graded Lie algebras with one-dimensional components, given by the
//! structure constants λ_{i,j} of `[e_i, e_j] = λ_{i,j} e_{i+j}`.

mod builders;
mod format;
mod iso;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exactnum::{var_cmp, ParamPoly};

pub use builders::{
    build_extension_family, build_filiform_table, build_m0q, build_mq, build_witt, family_level_constant,
    family_lie_length, witt_constant, FiliformTable,
};
pub use format::{emit_algebra, parse_algebra, ParseAlgebraError};
pub use iso::{graded_iso, IsoResult, IsoWitness, NotIsomorphic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    BadSupport(String),
    NotStorable { i: usize, j: usize, reason: &'static str },
    Precondition(String),
    Mismatch(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::BadSupport(s) => write!(f, "bad support: {}", s),
            AlgebraError::NotStorable { i, j, reason } => write!(f, "cannot store lambda({},{}): {}", i, j, reason),
            AlgebraError::Precondition(s) => write!(f, "precondition violated: {}", s),
            AlgebraError::Mismatch(s) => write!(f, "algebras not comparable: {}", s),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Finite-dimensional graded algebra spanned by e_i, i in `support`.
///
/// `[e_1, e_i] = e_{i+1}` is implied for every i ≥ 2 with i+1 ≤ top; the
/// remaining constants are stored for i < j only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedAlgebra {
    q: usize,
    top: usize,
    support: Vec<usize>,
    constants: BTreeMap<(usize, usize), ParamPoly>,
    params: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: ParamPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub pair: (usize, usize),
    pub lhs: ParamPoly,
    pub rhs: ParamPoly,
}

/// The support `{1, q, q+1, …, top}` (all of `1..=top` when q = 2).
pub fn natural_support(q: usize, top: usize) -> Vec<usize> {
    std::iter::once(1).chain(q.max(2)..=top).collect()
}

impl GradedAlgebra {
    pub fn new(q: usize, top: usize, support: Vec<usize>) -> Result<GradedAlgebra, AlgebraError> {
        if q < 2 {
            return Err(AlgebraError::BadSupport(format!("q = {} < 2", q)));
        }
        if support.first() != Some(&1) {
            return Err(AlgebraError::BadSupport("support must start with 1".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::BadSupport("support must be strictly increasing".into()));
        }
        if support.last() != Some(&top) {
            return Err(AlgebraError::BadSupport(format!("support must end at top = {}", top)));
        }
        if top > 1 && support.get(1) != Some(&q) {
            return Err(AlgebraError::BadSupport(format!(
                "second generator must have degree q = {}",
                q
            )));
        }
        Ok(GradedAlgebra {
            q,
            top,
            support,
            constants: BTreeMap::new(),
            params: Vec::new(),
        })
    }

    /// Algebra on the natural support with every optional constant zero.
    pub fn with_natural_support(q: usize, top: usize) -> GradedAlgebra {
        GradedAlgebra::new(q, top, natural_support(q, top)).expect("natural support is valid")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn declare_param(&mut self, name: &str) {
        if !self.params.iter().any(|p| p == name) {
            self.params.push(name.to_string());
            self.params.sort_by(|a, b| var_cmp(a, b));
        }
    }

    pub fn is_parameter_free(&self) -> bool {
        self.constants.values().all(|v| v.is_constant())
    }

    /// Stored constants (i < j, i ≥ 2), nonzero only.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), ParamPoly> {
        &self.constants
    }

    fn storable(&self, i: usize, j: usize) -> Result<(), AlgebraError> {
        let bad = |reason| Err(AlgebraError::NotStorable { i, j, reason });
        if i >= j {
            return bad("need i < j");
        }
        if i == 1 {
            return bad("[e_1, e_i] = e_{i+1} is fixed");
        }
        if !self.in_support(i) || !self.in_support(j) {
            return bad("index outside support");
        }
        if i + j > self.top {
            return bad("i + j exceeds top");
        }
        if !self.in_support(i + j) {
            return bad("i + j outside support");
        }
        Ok(())
    }

    pub fn set(&mut self, i: usize, j: usize, value: ParamPoly) -> Result<(), AlgebraError> {
        self.storable(i, j)?;
        for v in value.vars() {
            self.declare_param(v);
        }
        if value.is_zero() {
            self.constants.remove(&(i, j));
        } else {
            self.constants.insert((i, j), value);
        }
        Ok(())
    }

    /// λ_{i,j}, antisymmetric, zero outside the support or above top.
    pub fn lambda(&self, i: usize, j: usize) -> ParamPoly {
        if i == j || i + j > self.top || !self.in_support(i) || !self.in_support(j) || !self.in_support(i + j) {
            return ParamPoly::zero();
        }
        if i > j {
            return -self.lambda(j, i);
        }
        if i == 1 {
            return ParamPoly::one();
        }
        self.constants.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// J(e_i, e_j, e_k) coefficient of e_{i+j+k}.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> ParamPoly {
        let t1 = &self.lambda(i, j) * &self.lambda(i + j, k);
        let t2 = &self.lambda(j, k) * &self.lambda(j + k, i);
        let t3 = &self.lambda(k, i) * &self.lambda(k + i, j);
        &(&t1 + &t2) + &t3
    }

    /// Triples i < j < k in the support with i + j + k = level.
    pub fn triples_at_level(&self, level: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        if !self.in_support(level) || level > self.top {
            return out;
        }
        for (a, &i) in self.support.iter().enumerate() {
            for &j in &self.support[a + 1..] {
                if i + j >= level {
                    break;
                }
                let k = level - i - j;
                if k > j && self.in_support(k) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn jacobi_at_level(&self, level: usize) -> Vec<JacobiViolation> {
        self.triples_at_level(level)
            .into_iter()
            .filter_map(|t| {
                let r = self.jacobi_residual(t.0, t.1, t.2);
                if r.is_zero() {
                    None
                } else {
                    Some(JacobiViolation { triple: t, residual: r })
                }
            })
            .collect()
    }

    /// Specializes parameters; bound names leave the parameter list.
    pub fn substitute(&self, bindings: &BTreeMap<String, ParamPoly>) -> GradedAlgebra {
        let mut out = GradedAlgebra {
            q: self.q,
            top: self.top,
            support: self.support.clone(),
            constants: BTreeMap::new(),
            params: self
                .params
                .iter()
                .filter(|p| !bindings.contains_key(*p))
                .cloned()
                .collect(),
        };
        for (&(i, j), v) in &self.constants {
            let w = v.substitute(bindings);
            for name in w.vars() {
                out.declare_param(name);
            }
            if !w.is_zero() {
                out.constants.insert((i, j), w);
            }
        }
        out
    }

    /// The quotient by the span of e_i, i > top.
    pub fn truncate(&self, top: usize) -> GradedAlgebra {
        let support: Vec<usize> = self.support.iter().copied().filter(|&i| i <= top).collect();
        let top = *support.last().unwrap();
        let constants = self
            .constants
            .iter()
            .filter(|((i, j), _)| i + j <= top)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        GradedAlgebra {
            q: self.q,
            top,
            support,
            constants,
            params: self.params.clone(),
        }
    }

    /// Same constants on the support extended by `top + 1`, with every
    /// new-level constant zero.
    pub fn grow(&self) -> GradedAlgebra {
        let mut out = self.clone();
        out.top += 1;
        out.support.push(out.top);
        out
    }

    /// Variables that actually occur in some constant.
    pub fn used_params(&self) -> BTreeSet<String> {
        self.constants.values().flat_map(|v| v.vars().iter().cloned()).collect()
    }

    pub fn retain_used_params(&mut self) {
        let used = self.used_params();
        self.params.retain(|p| used.contains(p));
    }
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", emit_algebra(self))
    }
}

/// All Jacobi identities of the algebra; empty exactly when it is a Lie
/// algebra (identically in the parameters).
pub fn jacobi_check(a: &GradedAlgebra) -> Vec<JacobiViolation> {
    a.support.iter().flat_map(|&n| a.jacobi_at_level(n)).collect()
}

/// Checks λ_{i,j} = λ_{i+1,j} + λ_{i,j+1} for q ≤ i < j, i + j + 1 ≤ top.
pub fn verify_leibniz(a: &GradedAlgebra) -> Vec<LeibnizViolation> {
    let mut out = Vec::new();
    for (x, &i) in a.support.iter().enumerate().skip(1) {
        for &j in &a.support[x + 1..] {
            if i + j + 1 > a.top {
                break;
            }
            let lhs = a.lambda(i, j);
            let rhs = &a.lambda(i + 1, j) + &a.lambda(i, j + 1);
            if lhs != rhs {
                out.push(LeibnizViolation { pair: (i, j), lhs, rhs });
            }
        }
    }
    out
}
