//! One-dimensional graded central extensions: the algebra on degrees
//! `support ∪ {top+1}` whose truncation is the input.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{binomial, solve_constant_pivots, ParamPoly, RatMatrix, Rational};
use crate::liealg::{jacobi_check, GradedAlgebra, JacobiViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Unique,
    OneParamFamily,
    /// More than one free slot (never met for maximal class; kept so the
    /// solver does not have to guess).
    MultiParamFamily,
    Inconsistent,
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtensionKind::Unique => "Unique",
            ExtensionKind::OneParamFamily => "OneParamFamily",
            ExtensionKind::MultiParamFamily => "MultiParamFamily",
            ExtensionKind::Inconsistent => "Inconsistent",
        };
        f.write_str(s)
    }
}

/// Jacobi residual at the new level that must vanish, tagged with its triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub triple: (usize, usize, usize),
    pub poly: ParamPoly,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J({},{},{}): {}",
            self.triple.0, self.triple.1, self.triple.2, self.poly
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionOutcome {
    pub kind: ExtensionKind,
    /// Degree of the new component.
    pub level: usize,
    /// Present unless `kind` is `Inconsistent`.
    pub algebra: Option<GradedAlgebra>,
    pub free_slots: Vec<(usize, usize)>,
    pub fresh_params: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub genericity: Vec<ParamPoly>,
    /// Fresh parameters that a Jacobi triple at the new level fixed.
    pub pinned: Vec<Binding>,
}

impl ExtensionOutcome {
    pub fn free_slot(&self) -> Option<(usize, usize)> {
        self.free_slots.last().copied()
    }

    /// Constraints that can never vanish (nonzero constants).
    pub fn certified_contradictions(&self) -> Vec<&Constraint> {
        self.constraints
            .iter()
            .filter(|c| c.poly.constant_value().map_or(false, |v| !v.is_zero()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendError {
    NotLie(JacobiViolation),
    ZeroSteps,
}

impl fmt::Display for ExtendError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendError::NotLie(v) => write!(
                f,
                "input is not a Lie algebra: J({},{},{}) = {}",
                v.triple.0, v.triple.1, v.triple.2, v.residual
            ),
            ExtendError::ZeroSteps => write!(f, "steps must be at least 1"),
        }
    }
}

impl std::error::Error for ExtendError {}

/// Next unused name of the form `b<n>`.
pub fn fresh_param_name(params: &[String]) -> String {
    let max = params
        .iter()
        .filter_map(|p| p.strip_prefix('b').and_then(|n| n.parse::<usize>().ok()))
        .max()
        .unwrap_or(0);
    format!("b{}", max + 1)
}

/// Removes every factor in `nonzero` (as often as it divides) and reports
/// whether what is left is a nonzero constant.
pub fn contradicts(poly: &ParamPoly, nonzero: &[ParamPoly]) -> bool {
    if poly.is_zero() {
        return false;
    }
    let mut p = poly.clone();
    loop {
        if p.is_constant() {
            return true;
        }
        let mut progressed = false;
        for d in nonzero.iter().filter(|d| !d.is_constant()) {
            while let Some(q) = p.div_exact(d) {
                p = q;
                progressed = true;
            }
        }
        if !progressed {
            return p.is_constant();
        }
    }
}

/// Extends after checking that the input is a Lie algebra.
pub fn extend_once(a: &GradedAlgebra) -> Result<ExtensionOutcome, ExtendError> {
    extend_once_assuming(a, &[])
}

/// As [`extend_once`], treating every polynomial in `nonzero` as invertible
/// when deciding whether a constraint is contradictory.
pub fn extend_once_assuming(a: &GradedAlgebra, nonzero: &[ParamPoly]) -> Result<ExtensionOutcome, ExtendError> {
    if let Some(v) = jacobi_check(a).into_iter().next() {
        return Err(ExtendError::NotLie(v));
    }
    Ok(extend_unchecked(a, nonzero))
}

/// The new level filled in from the `[e_1, ·]` relations alone: every slot
/// is determined by its neighbour except the free ones, which get fresh
/// parameters. The other Jacobi triples are not imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionStep {
    pub algebra: GradedAlgebra,
    pub fresh_params: Vec<String>,
    pub free_slots: Vec<(usize, usize)>,
}

pub fn extend_by_recursion(a: &GradedAlgebra) -> RecursionStep {
    let mut b = a.grow();
    let n = b.top();
    let slots: Vec<usize> = b
        .support()
        .iter()
        .copied()
        .filter(|&r| r >= 2 && r < n - r && b.in_support(n - r))
        .collect();
    let col = |r: usize| slots.iter().position(|&s| s == r);

    // Every term of J(1,j,k) at level n is λ(x,y)·λ(x+y,z) with the second
    // factor at the new level: either ±u_r or ±λ(1, n−1) = ±1.
    let triples: Vec<_> = b.triples_at_level(n).into_iter().filter(|t| t.0 == 1).collect();
    let mut m = RatMatrix::zeros(triples.len(), slots.len());
    let mut rhs = vec![ParamPoly::zero(); triples.len()];
    for (row, &(i, j, k)) in triples.iter().enumerate() {
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            let coef = b.lambda(x, y);
            if coef.is_zero() {
                continue;
            }
            let (u, v) = (x + y, z);
            if u == v {
                continue;
            }
            let (lo, sgn) = if u < v { (u, 1) } else { (v, -1) };
            if lo == 1 {
                rhs[row] = &rhs[row] - &coef.scale(&Rational::from(sgn));
            } else if let Some(c) = col(lo) {
                let cur = m.get(row, c).clone();
                m.set(row, c, &cur + &coef.scale(&Rational::from(sgn)));
            }
        }
    }
    let sol = solve_constant_pivots(&m, &rhs).expect("dimensions agree");

    let mut params = a.params().to_vec();
    let mut fresh = Vec::new();
    let mut free_slots = Vec::new();
    for &f in &sol.free {
        let name = fresh_param_name(&params);
        params.push(name.clone());
        b.declare_param(&name);
        fresh.push(name);
        free_slots.push((slots[f], n - slots[f]));
    }
    for (c, &r) in slots.iter().enumerate() {
        let mut v = sol.particular[c].clone();
        for (fi, t) in fresh.iter().enumerate() {
            if !sol.kernel[fi][c].is_zero() {
                v = &v + &(&sol.kernel[fi][c] * &ParamPoly::var(t));
            }
        }
        b.set(r, n - r, v).expect("slot is storable");
    }
    b.retain_used_params();
    RecursionStep {
        algebra: b,
        fresh_params: fresh,
        free_slots,
    }
}

/// The extension step without the input check; chains call this after
/// their own bookkeeping has established the Jacobi identities.
///
/// After the recursion, a fresh parameter that some other Jacobi triple
/// fixes (linearly, with a constant coefficient) is pinned; whatever the
/// triples still demand is returned as constraints.
pub fn extend_unchecked(a: &GradedAlgebra, nonzero: &[ParamPoly]) -> ExtensionOutcome {
    let RecursionStep {
        algebra: mut b,
        fresh_params: mut fresh,
        mut free_slots,
    } = extend_by_recursion(a);
    let n = b.top();
    let mut pinned = Vec::new();
    let constraints: Vec<Constraint> = loop {
        let cs: Vec<Constraint> = b
            .jacobi_at_level(n)
            .into_iter()
            .map(|v| Constraint {
                triple: v.triple,
                poly: v.residual,
            })
            .collect();
        let hit = cs.iter().find_map(|c| {
            fresh.iter().rev().find_map(|p| {
                let (coef, rest) = c.poly.linear_in(p)?;
                let k = coef.constant_value()?;
                Some((c.triple, p.clone(), rest.scale(&(-k.inv().unwrap()))))
            })
        });
        match hit {
            Some((triple, param, value)) => {
                let mut map = BTreeMap::new();
                map.insert(param.clone(), value.clone());
                b = b.substitute(&map);
                b.retain_used_params();
                let idx = fresh.iter().position(|p| *p == param).unwrap();
                fresh.remove(idx);
                free_slots.remove(idx);
                pinned.push(Binding {
                    level: n,
                    param,
                    value,
                    triple,
                });
            }
            None => break cs,
        }
    };
    let fresh_params = fresh;
    let inconsistent = constraints.iter().any(|c| contradicts(&c.poly, nonzero));
    let kind = if inconsistent {
        ExtensionKind::Inconsistent
    } else {
        match fresh_params.len() {
            0 => ExtensionKind::Unique,
            1 => ExtensionKind::OneParamFamily,
            _ => ExtensionKind::MultiParamFamily,
        }
    };
    ExtensionOutcome {
        kind,
        level: n,
        algebra: if inconsistent { None } else { Some(b) },
        free_slots,
        fresh_params,
        constraints,
        genericity: Vec::new(),
        pinned,
    }
}

/// A parameter fixed by a constraint that is linear in it with a constant
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub level: usize,
    pub param: String,
    pub value: ParamPoly,
    pub triple: (usize, usize, usize),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} (J({},{},{}) at level {})",
            self.param, self.value, self.triple.0, self.triple.1, self.triple.2, self.level
        )
    }
}

/// First polynomial (in the given order) that is linear with a constant
/// coefficient in one of its variables, newest variable first. Returns the
/// polynomial's index, the variable and the value it is forced to.
pub fn find_linear_binding<'a, I>(polys: I) -> Option<(usize, String, ParamPoly)>
where
    I: IntoIterator<Item = &'a ParamPoly>,
{
    for (idx, p) in polys.into_iter().enumerate() {
        for v in p.vars().iter().rev() {
            if let Some((coef, rest)) = p.linear_in(v) {
                if let Some(k) = coef.constant_value() {
                    return Some((idx, v.clone(), rest.scale(&(-k.inv().unwrap()))));
                }
            }
        }
    }
    None
}

/// Drops zero constraints and those equal to an earlier one up to a scalar.
pub fn dedup_constraints(constraints: &mut Vec<Constraint>) {
    let mut seen = std::collections::HashSet::new();
    constraints.retain(|c| !c.poly.is_zero() && seen.insert(c.poly.primitive()));
}

/// Repeatedly solves constraints that are linear with a constant
/// coefficient in some parameter (newest parameter first), substituting
/// into the algebra and the remaining constraints.
pub fn thread_constraints(
    algebra: &mut GradedAlgebra,
    constraints: &mut Vec<Constraint>,
    level: usize,
) -> Vec<Binding> {
    let mut out = Vec::new();
    loop {
        dedup_constraints(constraints);
        let (idx, param, value) = match find_linear_binding(constraints.iter().map(|c| &c.poly)) {
            Some(found) => found,
            None => return out,
        };
        let triple = constraints[idx].triple;
        let mut map = BTreeMap::new();
        map.insert(param.clone(), value.clone());
        *algebra = algebra.substitute(&map);
        for c in constraints.iter_mut() {
            c.poly = c.poly.substitute(&map);
        }
        out.push(Binding {
            level,
            param,
            value,
            triple,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub outcome: ExtensionOutcome,
    pub bindings: Vec<Binding>,
    /// Constraints still open after threading, carried to the next step.
    pub pending: Vec<Constraint>,
}

/// Applies the extension `steps` times, keeping families symbolic and
/// threading forced parameters; stops at the first inconsistency.
pub fn extend_chain(a: &GradedAlgebra, steps: usize) -> Result<Vec<ChainStep>, ExtendError> {
    extend_chain_assuming(a, steps, &[])
}

pub fn extend_chain_assuming(
    a: &GradedAlgebra,
    steps: usize,
    nonzero: &[ParamPoly],
) -> Result<Vec<ChainStep>, ExtendError> {
    if steps == 0 {
        return Err(ExtendError::ZeroSteps);
    }
    if let Some(v) = jacobi_check(a).into_iter().next() {
        return Err(ExtendError::NotLie(v));
    }
    let mut cur = a.clone();
    let mut pending: Vec<Constraint> = Vec::new();
    let mut out = Vec::new();
    let mut nonzero = nonzero.to_vec();
    for _ in 0..steps {
        let mut outcome = extend_unchecked(&cur, &nonzero);
        if outcome.kind == ExtensionKind::Inconsistent {
            out.push(ChainStep {
                outcome,
                bindings: Vec::new(),
                pending,
            });
            return Ok(out);
        }
        let mut alg = outcome.algebra.clone().unwrap();
        let mut all: Vec<Constraint> = pending.clone();
        all.extend(outcome.constraints.iter().cloned());
        let bindings = thread_constraints(&mut alg, &mut all, outcome.level);
        for b in &bindings {
            let mut map = BTreeMap::new();
            map.insert(b.param.clone(), b.value.clone());
            nonzero = nonzero.iter().map(|d| d.substitute(&map)).collect();
        }
        if all.iter().any(|c| contradicts(&c.poly, &nonzero)) {
            outcome.kind = ExtensionKind::Inconsistent;
            outcome.algebra = None;
            out.push(ChainStep {
                outcome,
                bindings,
                pending: all,
            });
            return Ok(out);
        }
        alg.retain_used_params();
        outcome.algebra = Some(alg.clone());
        cur = alg;
        pending = all.clone();
        out.push(ChainStep {
            outcome,
            bindings,
            pending: all,
        });
    }
    Ok(out)
}

/// q×q matrix whose row r is [C(k−r, k−r−1), C(k−r+1, k−r−2), …,
/// C(k−r+q−1, k−r−q)], i.e. entry (r, c) = C(k−r+c, k−r−1−c).
pub fn binomial_matrix(q: usize, k: usize) -> Result<RatMatrix, String> {
    if k <= 2 * q {
        return Err(format!("binomial matrix needs k > 2q, got q = {}, k = {}", q, k));
    }
    let (qi, ki) = (q as i64, k as i64);
    let rows = (0..qi)
        .map(|r| {
            (0..qi)
                .map(|c| ParamPoly::constant(Rational::from(binomial(ki - r + c, ki - r - 1 - c))))
                .collect()
        })
        .collect();
    Ok(RatMatrix::from_rows(rows))
}
