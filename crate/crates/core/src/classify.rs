//! Exhaustive exploration of graded extension chains with exact case
//! splitting on the parameter constraints.
//!
//! A branch carries an algebra together with the polynomial equations its
//! parameters must satisfy. At every step the equations are threaded
//! (parameters that occur linearly with a constant coefficient are solved
//! for) and then triangularized: the newest parameter is eliminated by
//! pseudo-substitution until only univariate eliminants are left. Their gcd
//! either certifies that the branch is empty or splits it into one child per
//! rational root plus one child for the irrational remainder. Every
//! elimination divides by a leading coefficient D; the case D = 0 becomes a
//! child of its own so nothing is lost.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::exactnum::univariate::{from_dense, strip_rational_roots, to_dense};
use crate::exactnum::{poly_gcd, rational_roots, solve_linear, ParamPoly, RatMatrix, Rational, SolveResult};
use crate::extend::{extend_chain, extend_unchecked, find_linear_binding, ExtensionKind};
use crate::liealg::{
    build_extension_family, build_m0q, build_mq, build_witt, emit_algebra, family_level_constant, graded_iso,
    natural_support, GradedAlgebra,
};
use crate::report::record;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalType {
    M0q,
    Mq,
    Wittq,
}

impl fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalType::M0q => "m0q",
            CanonicalType::Mq => "mq",
            CanonicalType::Wittq => "wittq",
        })
    }
}

/// First of m^q_0, m_q, W^q (in that order) graded-isomorphic to `a`.
pub fn recognize_type(a: &GradedAlgebra) -> Option<CanonicalType> {
    if !a.is_parameter_free() || a.support() != natural_support(a.q(), a.top()).as_slice() {
        return None;
    }
    let (q, n) = (a.q(), a.top());
    let candidates = [
        (CanonicalType::M0q, build_m0q(q, n)),
        (CanonicalType::Mq, build_mq(q, n)),
        (CanonicalType::Wittq, build_witt(q, n)),
    ];
    for (tag, b) in candidates {
        if let Ok(b) = b {
            if matches!(graded_iso(a, &b), Ok(r) if r.is_isomorphic()) {
                return Some(tag);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Jacobi {
        triple: (usize, usize, usize),
        level: usize,
    },
    /// Added by a case split.
    Imposed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub origin: Origin,
    pub poly: ParamPoly,
}

impl Equation {
    pub fn label(&self) -> String {
        match self.origin {
            Origin::Jacobi {
                triple: (i, j, k),
                level,
            } => format!("J({},{},{})@{}", i, j, k, level),
            Origin::Imposed => "imposed".to_string(),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label(), self.poly)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBinding {
    pub level: usize,
    pub param: String,
    pub value: ParamPoly,
    pub source: String,
}

/// One pseudo-substitution `var = num / den` of the triangularization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub var: String,
    pub num: ParamPoly,
    pub den: ParamPoly,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeathReason {
    /// A Jacobi residual became a nonzero constant.
    ConstantConstraint,
    /// Elimination produced a nonzero constant (valid where every recorded
    /// side condition is nonzero).
    EliminationContradiction,
    /// The univariate eliminants have no common root.
    CoprimeEliminants,
}

impl fmt::Display for DeathReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeathReason::ConstantConstraint => "constant-constraint",
            DeathReason::EliminationContradiction => "elimination-contradiction",
            DeathReason::CoprimeEliminants => "coprime-eliminants",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    DeadEnd {
        level: usize,
        reason: DeathReason,
        witness: Vec<Equation>,
    },
    Recognized(CanonicalType),
    /// Cut off at the dimension bound while still alive.
    OpenFamily {
        level: usize,
        params: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchNode {
    /// How this branch was split off its parent.
    pub binding: Option<String>,
    /// Algebra when the branch starts: the parent's last algebra with the
    /// binding applied.
    pub algebra: GradedAlgebra,
    /// Last algebra reached by this branch before it split or ended.
    pub last_algebra: GradedAlgebra,
    pub fresh_params: Vec<(usize, String)>,
    pub bindings: Vec<ParamBinding>,
    /// Triangularization that led to the split (or to the death).
    pub eliminations: Vec<Elimination>,
    pub side_conditions: Vec<ParamPoly>,
    /// Univariate polynomial whose roots the children run over.
    pub branch_poly: Option<ParamPoly>,
    pub equations: Vec<Equation>,
    pub terminal: Option<Terminal>,
    pub children: Vec<BranchNode>,
}

impl BranchNode {
    pub fn reached(&self) -> usize {
        self.last_algebra.top()
    }

    /// Nodes in depth-first order with their paths ("0", "0.1", ...).
    pub fn walk(&self) -> Vec<(String, &BranchNode)> {
        let mut out = Vec::new();
        fn go<'a>(n: &'a BranchNode, path: String, out: &mut Vec<(String, &'a BranchNode)>) {
            out.push((path.clone(), n));
            for (i, c) in n.children.iter().enumerate() {
                go(c, format!("{}.{}", path, i), out);
            }
        }
        go(self, "0".to_string(), &mut out);
        out
    }

    pub fn leaves(&self) -> Vec<(String, &BranchNode)> {
        self.walk().into_iter().filter(|(_, n)| n.children.is_empty()).collect()
    }

    /// Follows a child whose binding starts with `prefix`.
    pub fn child(&self, prefix: &str) -> Option<&BranchNode> {
        self.children
            .iter()
            .find(|c| c.binding.as_deref().map_or(false, |b| b.starts_with(prefix)))
    }
}

#[derive(Clone, Debug)]
pub struct ExploreConfig {
    pub max_dim: usize,
    /// A nonzero parameter on top of m^q_0 is only tried at levels at or
    /// above this one; below it the parameter is set to zero.
    pub min_deviation_level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    algebra: GradedAlgebra,
    eqs: Vec<Equation>,
}

impl State {
    fn key(&self) -> String {
        let mut polys: Vec<String> = self.eqs.iter().map(|e| e.poly.primitive().to_string()).collect();
        polys.sort();
        format!("{}|{}", emit_algebra(&self.algebra), polys.join(";"))
    }

    fn normalize(&mut self) {
        let mut seen = HashSet::new();
        self.eqs
            .retain(|e| !e.poly.is_zero() && seen.insert(e.poly.primitive()));
    }

    fn substitute(&self, map: &BTreeMap<String, ParamPoly>) -> State {
        let mut s = State {
            algebra: self.algebra.substitute(map),
            eqs: self
                .eqs
                .iter()
                .map(|e| Equation {
                    origin: e.origin.clone(),
                    poly: e.poly.substitute(map),
                })
                .collect(),
        };
        s.algebra.retain_used_params();
        s.normalize();
        s
    }

    fn with_imposed(&self, p: &ParamPoly) -> State {
        let mut s = self.clone();
        s.eqs.push(Equation {
            origin: Origin::Imposed,
            poly: p.primitive(),
        });
        s.normalize();
        s
    }

    fn has_imposed(&self, p: &ParamPoly) -> bool {
        let p = p.primitive();
        self.eqs.iter().any(|e| e.poly.primitive() == p)
    }
}

enum Triangular {
    /// Nothing decisive: the equations still leave room.
    Open,
    Contradiction {
        witness: Vec<Equation>,
    },
    Univariate {
        var: String,
        polys: Vec<Equation>,
    },
}

struct Triangularization {
    result: Triangular,
    eliminations: Vec<Elimination>,
    sides: Vec<ParamPoly>,
}

/// Removes every factor of `p` that divides by one of `nonzero`.
fn strip_factors(mut p: ParamPoly, nonzero: &[ParamPoly]) -> ParamPoly {
    if p.is_zero() {
        return p;
    }
    for d in nonzero.iter().filter(|d| !d.is_constant()) {
        while let Some(q) = p.div_exact(d) {
            p = q;
        }
    }
    p.primitive()
}

fn triangularize(eqs: &[Equation]) -> Triangularization {
    let mut work: Vec<Equation> = eqs.iter().filter(|e| !e.poly.is_constant()).cloned().collect();
    let mut eliminations = Vec::new();
    let mut sides: Vec<ParamPoly> = Vec::new();
    let done = |result, eliminations, sides| Triangularization {
        result,
        eliminations,
        sides,
    };
    loop {
        if let Some(e) = work.iter().find(|e| e.poly.is_constant() && !e.poly.is_zero()) {
            let witness = vec![e.clone()];
            return done(Triangular::Contradiction { witness }, eliminations, sides);
        }
        work.retain(|e| !e.poly.is_zero());
        let newest = work
            .iter()
            .filter(|e| e.poly.vars().len() >= 2)
            .filter_map(|e| e.poly.vars().last().cloned())
            .max_by(|a, b| crate::exactnum::var_cmp(a, b));
        let v = match newest {
            Some(v) => v,
            None => break,
        };
        let pick = work
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.poly.linear_in(&v).map(|(c, r)| (i, c, r, e)))
            .min_by_key(|(i, c, _, e)| (e.poly.num_terms(), e.poly.total_degree(), c.num_terms(), *i));
        let (idx, coef, rest) = match pick {
            Some((i, c, r, _)) => (i, c, r),
            None => break,
        };
        let source = work[idx].label();
        let num = -&rest;
        work.remove(idx);
        if !coef.is_constant() {
            sides.push(coef.primitive());
        }
        for e in work.iter_mut() {
            if e.poly.contains_var(&v) {
                e.poly = strip_factors(e.poly.pseudo_substitute(&v, &num, &coef), &sides);
            }
        }
        eliminations.push(Elimination {
            var: v,
            num,
            den: coef,
            source,
        });
    }
    // Everything left is univariate (or stuck in several variables).
    let mut by_var: BTreeMap<String, Vec<Equation>> = BTreeMap::new();
    for e in &work {
        if let Some(v) = e.poly.univariate_var() {
            by_var.entry(v.to_string()).or_default().push(e.clone());
        }
    }
    let oldest = by_var.keys().min_by(|a, b| crate::exactnum::var_cmp(a, b)).cloned();
    match oldest {
        Some(var) => {
            let polys = by_var.remove(&var).unwrap();
            done(Triangular::Univariate { var, polys }, eliminations, sides)
        }
        None => done(Triangular::Open, eliminations, sides),
    }
}

fn dead(level: usize, reason: DeathReason, witness: Vec<Equation>) -> Terminal {
    Terminal::DeadEnd { level, reason, witness }
}

struct Explorer<'a> {
    cfg: &'a ExploreConfig,
}

impl<'a> Explorer<'a> {
    fn run(&self, mut state: State, binding: Option<String>, ancestors: &HashSet<String>) -> BranchNode {
        state.normalize();
        let mut node = BranchNode {
            binding,
            algebra: state.algebra.clone(),
            last_algebra: state.algebra.clone(),
            fresh_params: Vec::new(),
            bindings: Vec::new(),
            eliminations: Vec::new(),
            side_conditions: Vec::new(),
            branch_poly: None,
            equations: Vec::new(),
            terminal: None,
            children: Vec::new(),
        };
        let mut seen = ancestors.clone();
        seen.insert(state.key());
        let mut pending: Vec<(String, State)> = Vec::new();
        loop {
            let level = state.algebra.top();
            // Thread forced parameters.
            while let Some((idx, param, value)) = find_linear_binding(state.eqs.iter().map(|e| &e.poly)) {
                let source = state.eqs[idx].label();
                let mut map = BTreeMap::new();
                map.insert(param.clone(), value.clone());
                state = state.substitute(&map);
                node.bindings.push(ParamBinding {
                    level,
                    param,
                    value,
                    source,
                });
            }
            node.last_algebra = state.algebra.clone();
            node.equations = state.eqs.clone();
            if let Some(e) = state.eqs.iter().find(|e| e.poly.is_constant()) {
                node.terminal = Some(dead(level, DeathReason::ConstantConstraint, vec![e.clone()]));
                break;
            }
            if !state.eqs.is_empty() {
                let tri = triangularize(&state.eqs);
                let decisive = match &tri.result {
                    Triangular::Open => false,
                    Triangular::Contradiction { witness } => {
                        node.terminal = Some(dead(level, DeathReason::EliminationContradiction, witness.clone()));
                        true
                    }
                    Triangular::Univariate { var, polys } => {
                        let mut g = polys[0].poly.clone();
                        for e in &polys[1..] {
                            g = poly_gcd(&g, &e.poly).expect("univariate in one variable");
                        }
                        let g = g.primitive();
                        if g.is_constant() {
                            node.terminal = Some(dead(level, DeathReason::CoprimeEliminants, polys.clone()));
                            true
                        } else {
                            let roots = rational_roots(&g).expect("nonzero univariate");
                            let (_, dense) = to_dense(&g).expect("univariate");
                            let rest = from_dense(var, &strip_rational_roots(&dense, &roots));
                            if roots.is_empty() && state.has_imposed(&g) {
                                false
                            } else {
                                node.branch_poly = Some(g.clone());
                                for r in &roots {
                                    let mut map = BTreeMap::new();
                                    map.insert(var.clone(), ParamPoly::constant(r.clone()));
                                    pending.push((format!("{} = {}", var, r), state.substitute(&map)));
                                }
                                if !rest.is_constant() && !state.has_imposed(&rest) {
                                    let rest = rest.primitive();
                                    pending.push((format!("{} = 0", rest), state.with_imposed(&rest)));
                                }
                                true
                            }
                        }
                    }
                };
                if decisive {
                    for d in &tri.sides {
                        if !state.has_imposed(d) {
                            pending.push((format!("{} = 0 (degenerate)", d), state.with_imposed(d)));
                        }
                    }
                    node.eliminations = tri.eliminations;
                    node.side_conditions = tri.sides;
                    break;
                }
            }
            if level >= self.cfg.max_dim {
                node.terminal = Some(match (state.eqs.is_empty(), recognize_type(&state.algebra)) {
                    (true, Some(t)) => Terminal::Recognized(t),
                    _ => Terminal::OpenFamily {
                        level,
                        params: state.algebra.params().to_vec(),
                    },
                });
                break;
            }
            let trivial = state.eqs.is_empty() && state.algebra.constants().is_empty();
            let out = extend_unchecked(&state.algebra, &[]);
            let next = out.level;
            if out.kind == ExtensionKind::Inconsistent {
                let witness = out
                    .certified_contradictions()
                    .into_iter()
                    .map(|c| Equation {
                        origin: Origin::Jacobi {
                            triple: c.triple,
                            level: next,
                        },
                        poly: c.poly.clone(),
                    })
                    .collect();
                node.terminal = Some(dead(next, DeathReason::ConstantConstraint, witness));
                break;
            }
            let algebra = out.algebra.unwrap();
            for b in out.pinned {
                let source = format!("J({},{},{})@{}", b.triple.0, b.triple.1, b.triple.2, b.level);
                node.bindings.push(ParamBinding {
                    level: b.level,
                    param: b.param,
                    value: b.value,
                    source,
                });
            }
            for p in &out.fresh_params {
                node.fresh_params.push((next, p.clone()));
            }
            state.algebra = algebra;
            state.eqs.extend(out.constraints.into_iter().map(|c| Equation {
                origin: Origin::Jacobi {
                    triple: c.triple,
                    level: next,
                },
                poly: c.poly,
            }));
            state.normalize();
            if trivial && out.fresh_params.len() == 1 {
                // On top of m^q_0 the new parameter is the only nonzero
                // constant, so a rescaling of e_q normalizes it to 0 or 1.
                let p = &out.fresh_params[0];
                let mut values = vec![0];
                if next >= self.cfg.min_deviation_level {
                    values.push(1);
                }
                for v in values {
                    let mut map = BTreeMap::new();
                    map.insert(p.clone(), ParamPoly::int(v));
                    pending.push((format!("{} = {} at dim {}", p, v, next), state.substitute(&map)));
                }
                node.last_algebra = state.algebra.clone();
                break;
            }
        }
        let mut keys = seen;
        let mut children = Vec::new();
        for (label, s) in pending {
            if keys.insert(s.key()) {
                children.push((label, s));
            }
        }
        let ancestors = &keys;
        node.children = children
            .into_par_iter()
            .map(|(label, s)| self.run(s, Some(label), ancestors))
            .collect();
        node
    }
}

/// Explores every extension chain of `start` up to dimension `max_dim`.
pub fn explore(start: &GradedAlgebra, cfg: &ExploreConfig) -> BranchNode {
    let state = State {
        algebra: start.clone(),
        eqs: Vec::new(),
    };
    Explorer { cfg }.run(state, None, &HashSet::new())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSummary {
    pub survivors: Vec<(String, CanonicalType)>,
    /// Live leaves whose algebra repeats an earlier survivor's, as
    /// (duplicate path, original path). Different case splits can land on
    /// the same algebra.
    pub merged: Vec<(String, String)>,
    pub open: Vec<(String, usize)>,
    pub dead: usize,
}

impl TreeSummary {
    pub fn of(root: &BranchNode) -> TreeSummary {
        let mut s = TreeSummary {
            survivors: Vec::new(),
            merged: Vec::new(),
            open: Vec::new(),
            dead: 0,
        };
        let mut firsts: Vec<(&GradedAlgebra, String)> = Vec::new();
        for (path, n) in root.leaves() {
            match &n.terminal {
                Some(Terminal::Recognized(t)) => match firsts.iter().find(|(a, _)| **a == n.last_algebra) {
                    Some((_, orig)) => s.merged.push((path, orig.clone())),
                    None => {
                        firsts.push((&n.last_algebra, path.clone()));
                        s.survivors.push((path, *t));
                    }
                },
                Some(Terminal::OpenFamily { level, .. }) => s.open.push((path, *level)),
                Some(Terminal::DeadEnd { .. }) => s.dead += 1,
                None => {}
            }
        }
        s
    }

    pub fn surviving_types(&self) -> Vec<CanonicalType> {
        let mut t: Vec<CanonicalType> = self.survivors.iter().map(|(_, t)| *t).collect();
        t.sort();
        t.dedup();
        t
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub q: usize,
    pub max_dim: usize,
    pub root: BranchNode,
    pub summary: TreeSummary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    MaxDimTooSmall { min: usize, got: usize },
    BadQ(usize),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::MaxDimTooSmall { min, got } => {
                write!(
                    f,
                    "max_dim must be at least {} to reach the deciding constraints, got {}",
                    min, got
                )
            }
            ClassifyError::BadQ(q) => write!(f, "q must be at least 3, got {}", q),
        }
    }
}

impl std::error::Error for ClassifyError {}

/// All graded maximal-class chains over m^3_0(6) up to `max_dim`.
pub fn classify_q3(max_dim: usize) -> Result<Classification, ClassifyError> {
    if max_dim < 16 {
        return Err(ClassifyError::MaxDimTooSmall { min: 16, got: max_dim });
    }
    let cfg = ExploreConfig {
        max_dim,
        min_deviation_level: 0,
    };
    let root = explore(&build_m0q(3, 6).unwrap(), &cfg);
    let summary = TreeSummary::of(&root);
    Ok(Classification {
        q: 3,
        max_dim,
        root,
        summary,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    /// Dimension 2l+1 at which the parameter was set to 1.
    pub level: usize,
    /// Largest dimension at which some sub-branch died, if all did.
    pub died_at: Option<usize>,
    /// Whether the 2q−1 step window after the deviation fits below max_dim.
    pub decidable: bool,
}

#[derive(Clone, Debug)]
pub struct MainTheoremReport {
    pub q: usize,
    pub max_dim: usize,
    pub survivors: Vec<(String, CanonicalType)>,
    pub spine_matches: bool,
    pub deviations: Vec<Deviation>,
    pub root: BranchNode,
}

impl MainTheoremReport {
    /// Unique survivor m^q_0 and every decidable deviation dead within
    /// 2q−1 steps.
    pub fn holds(&self) -> bool {
        let window = 2 * self.q - 1;
        self.survivors.len() == 1
            && self.survivors[0].1 == CanonicalType::M0q
            && self.spine_matches
            && self
                .deviations
                .iter()
                .filter(|d| d.decidable)
                .all(|d| d.died_at.map_or(false, |l| l <= d.level + window))
    }
}

fn subtree_death(n: &BranchNode) -> Option<usize> {
    let mut worst = 0;
    for (_, leaf) in n.leaves() {
        match &leaf.terminal {
            Some(Terminal::DeadEnd { level, .. }) => worst = worst.max(*level),
            _ => return None,
        }
    }
    Some(worst)
}

/// Explores chains over m^q_0(2q) with λ_{q,q+1} = … = λ_{2q,2q+1} = 0,
/// i.e. no nonzero parameter on top of m^q_0(2l) for l ≤ 2q.
pub fn verify_main_theorem(q: usize, max_dim: usize) -> Result<MainTheoremReport, ClassifyError> {
    if q < 3 {
        return Err(ClassifyError::BadQ(q));
    }
    if max_dim < 4 * q + 4 {
        return Err(ClassifyError::MaxDimTooSmall {
            min: 4 * q + 4,
            got: max_dim,
        });
    }
    let cfg = ExploreConfig {
        max_dim,
        min_deviation_level: 4 * q + 3,
    };
    let root = explore(&build_m0q(q, 2 * q).unwrap(), &cfg);
    let summary = TreeSummary::of(&root);
    let window = 2 * q - 1;
    let mut deviations = Vec::new();
    let mut spine = &root;
    let mut spine_matches = true;
    loop {
        if spine.algebra != build_m0q(q, spine.algebra.top()).unwrap() {
            spine_matches = false;
        }
        let zero = spine
            .children
            .iter()
            .find(|c| c.binding.as_deref().map_or(false, |b| b.contains(" = 0 at dim")));
        if let Some(one) = spine
            .children
            .iter()
            .find(|c| c.binding.as_deref().map_or(false, |b| b.contains(" = 1 at dim")))
        {
            let level = one.algebra.top();
            deviations.push(Deviation {
                level,
                died_at: subtree_death(one),
                decidable: level + window <= max_dim,
            });
        }
        match zero {
            Some(z) => spine = z,
            None => break,
        }
    }
    Ok(MainTheoremReport {
        q,
        max_dim,
        survivors: summary.survivors,
        spine_matches,
        deviations,
        root,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCase {
    pub k: usize,
    /// β_i = λ_{k+i,k+i+1} read off the last consistent algebra.
    pub betas: Vec<Rational>,
    pub last_consistent: GradedAlgebra,
    pub death_level: Option<usize>,
    pub death_constraints: Vec<(usize, usize, usize, ParamPoly)>,
}

impl KCase {
    pub fn dies_at_triple(&self, t: (usize, usize, usize)) -> bool {
        self.death_constraints
            .iter()
            .any(|&(i, j, k, ref p)| (i, j, k) == t && !p.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct KLemmaReport {
    pub cases: Vec<KCase>,
    /// λ_{3,13}, λ_{5,11} from the family formulas at the k = 5 bindings,
    /// and λ_{5,8} from the chain.
    pub k5_values: Vec<((usize, usize), Rational)>,
    /// λ_{3,13} = λ_{3,14} = λ_{3,15} = 0 for k = 6, linear in β_1, β_2.
    pub k6_matrix: RatMatrix,
    pub k6_rhs: Vec<ParamPoly>,
    pub k6_result: SolveResult,
}

fn k_case(k: usize) -> KCase {
    let start = build_extension_family(3, k, 1, &[]).unwrap();
    let steps = extend_chain(&start, 12).expect("family is a Lie algebra");
    let mut last = start;
    let mut death_level = None;
    let mut death_constraints = Vec::new();
    for st in &steps {
        match &st.outcome.algebra {
            Some(a) => last = a.clone(),
            None => {
                death_level = Some(st.outcome.level);
                let mut cs: Vec<_> = st
                    .outcome
                    .constraints
                    .iter()
                    .map(|c| (c.triple.0, c.triple.1, c.triple.2, c.poly.clone()))
                    .collect();
                cs.extend(
                    st.pending
                        .iter()
                        .map(|c| (c.triple.0, c.triple.1, c.triple.2, c.poly.clone())),
                );
                death_constraints = cs;
                break;
            }
        }
    }
    let mut betas = Vec::new();
    let mut i = 1;
    while 2 * k + 2 * i + 1 <= last.top() {
        match last.lambda(k + i, k + i + 1).constant_value() {
            Some(v) => betas.push(v),
            None => break,
        }
        i += 1;
    }
    KCase {
        k,
        betas,
        last_consistent: last,
        death_level,
        death_constraints,
    }
}

/// The q = 3 chains from m^3_{0,1}(2k+1) for k = 4, 5, 6.
pub fn verify_k_lemmas() -> KLemmaReport {
    let cases: Vec<KCase> = [4, 5, 6].into_par_iter().map(k_case).collect();
    let k5 = &cases[1];
    let b5: Vec<ParamPoly> = k5.betas.iter().map(|b| ParamPoly::constant(b.clone())).collect();
    let at16 = |r: usize| family_level_constant(5, 6, r, &b5).constant_value().unwrap();
    let k5_values = vec![
        ((3, 13), at16(3)),
        ((5, 11), at16(5)),
        ((5, 8), k5.last_consistent.lambda(5, 8).constant_value().unwrap()),
    ];
    let vars = [ParamPoly::var("b1"), ParamPoly::var("b2")];
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 4..=6 {
        let p = family_level_constant(6, t, 3, &vars);
        let row: Vec<ParamPoly> = ["b1", "b2"]
            .iter()
            .map(|v| p.linear_in(v).map(|(c, _)| c).unwrap_or_else(ParamPoly::zero))
            .collect();
        let mut constant = BTreeMap::new();
        constant.insert("b1".to_string(), ParamPoly::zero());
        constant.insert("b2".to_string(), ParamPoly::zero());
        rhs.push(-&p.substitute(&constant));
        rows.push(row);
    }
    let k6_matrix = RatMatrix::from_rows(rows);
    let k6_result = solve_linear(&k6_matrix, &rhs).expect("3x2 system");
    KLemmaReport {
        cases,
        k5_values,
        k6_matrix,
        k6_rhs: rhs,
        k6_result,
    }
}

fn terminal_text(t: &Option<Terminal>) -> String {
    match t {
        None => "split".to_string(),
        Some(Terminal::Recognized(ty)) => format!("recognized {}", ty),
        Some(Terminal::OpenFamily { level, params }) => {
            if params.is_empty() {
                format!("open at dim {}", level)
            } else {
                format!("open at dim {} in {}", level, params.join(","))
            }
        }
        Some(Terminal::DeadEnd { level, reason, .. }) => format!("dead at dim {} ({})", level, reason),
    }
}

/// Indented text rendering, one line per node plus its evidence.
pub fn render_tree(root: &BranchNode) -> String {
    let mut s = String::new();
    for (path, n) in root.walk() {
        let depth = path.matches('.').count();
        let pad = "  ".repeat(depth);
        let head = n
            .binding
            .clone()
            .unwrap_or_else(|| format!("start dim {}", n.algebra.top()));
        s.push_str(&format!(
            "{}[{}] {} -> dims {}..{}: {}\n",
            pad,
            path,
            head,
            n.algebra.top(),
            n.reached(),
            terminal_text(&n.terminal)
        ));
        for b in &n.bindings {
            s.push_str(&format!(
                "{}    forced {} = {} by {} at dim {}\n",
                pad, b.param, b.value, b.source, b.level
            ));
        }
        for e in &n.eliminations {
            s.push_str(&format!(
                "{}    eliminate {} = ({}) / ({}) from {}\n",
                pad, e.var, e.num, e.den, e.source
            ));
        }
        if let Some(g) = &n.branch_poly {
            s.push_str(&format!("{}    branch polynomial {}\n", pad, g));
        }
        if let Some(Terminal::DeadEnd { witness, .. }) = &n.terminal {
            for w in witness {
                s.push_str(&format!("{}    witness {}\n", pad, w));
            }
        }
    }
    s
}

/// One tab-separated `key=value` record per node.
pub fn structured_tree(root: &BranchNode) -> String {
    let mut s = String::new();
    for (path, n) in root.walk() {
        let (tag, detail) = match &n.terminal {
            None => ("split".to_string(), String::new()),
            Some(Terminal::Recognized(t)) => ("recognized".to_string(), t.to_string()),
            Some(Terminal::OpenFamily { params, .. }) => ("open".to_string(), params.join(",")),
            Some(Terminal::DeadEnd { reason, .. }) => ("dead".to_string(), reason.to_string()),
        };
        let witness: Vec<String> = match &n.terminal {
            Some(Terminal::DeadEnd { witness, .. }) => witness.iter().map(|w| w.to_string()).collect(),
            _ => n.branch_poly.iter().map(|g| g.to_string()).collect(),
        };
        let bindings: Vec<String> = n.bindings.iter().map(|b| format!("{}={}", b.param, b.value)).collect();
        s.push_str(&record(&[
            ("record", "node".to_string()),
            ("path", path),
            ("binding", n.binding.clone().unwrap_or_default()),
            ("start", n.algebra.top().to_string()),
            ("reached", n.reached().to_string()),
            ("terminal", tag),
            ("detail", detail),
            ("forced", bindings.join(";")),
            ("witness", witness.join(";")),
        ]));
    }
    s
}
