//! The quadratic systems cutting out the parameter space M_n of graded
//! filiform Lie algebras with support {1, …, n}, in the variables x_{j,s}
//! and x_{−1}, together with coordinate changes, restrictions to weight
//! classes and pointwise Jacobian checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::exactnum::{binomial, det, ParamPoly, RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyError {
    Index(String),
    TooSmall(usize),
    NotInvertible(String),
    Unbound(String),
    BadVariable(String),
}

impl fmt::Display for VarietyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyError::Index(s) => write!(f, "index out of range: {}", s),
            VarietyError::TooSmall(n) => write!(f, "systems are defined for n >= 9, got {}", n),
            VarietyError::NotInvertible(s) => write!(f, "coordinate change is not invertible: {}", s),
            VarietyError::Unbound(v) => write!(f, "point does not bind {}", v),
            VarietyError::BadVariable(v) => write!(f, "not a variety variable: {}", v),
        }
    }
}

impl std::error::Error for VarietyError {}

/// A coordinate: x_{j,s}, x_{−1}, or a z_{a,s} produced by a coordinate
/// change. Ordered x_{−1} first, then by weight s, then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarietyVar {
    XMinus1,
    X { j: usize, s: usize },
    Z { a: usize, s: usize },
}

impl VarietyVar {
    pub fn x(j: usize, s: usize) -> VarietyVar {
        VarietyVar::X { j, s }
    }

    pub fn z(a: usize, s: usize) -> VarietyVar {
        VarietyVar::Z { a, s }
    }

    pub fn weight(&self) -> i64 {
        match *self {
            VarietyVar::XMinus1 => -1,
            VarietyVar::X { s, .. } | VarietyVar::Z { s, .. } => s as i64,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn poly(&self) -> ParamPoly {
        ParamPoly::var(&self.name())
    }

    fn sort_key(&self) -> (i64, u8, usize) {
        match *self {
            VarietyVar::XMinus1 => (-1, 0, 0),
            VarietyVar::X { j, s } => (s as i64, 0, j),
            VarietyVar::Z { a, s } => (s as i64, 1, a),
        }
    }
}

impl Ord for VarietyVar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for VarietyVar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarietyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyVar::XMinus1 => write!(f, "xm1"),
            VarietyVar::X { j, s } => write!(f, "x[{},{}]", j, s),
            VarietyVar::Z { a, s } => write!(f, "z[{},{}]", a, s),
        }
    }
}

impl FromStr for VarietyVar {
    type Err = VarietyError;
    fn from_str(s: &str) -> Result<VarietyVar, VarietyError> {
        if s == "xm1" {
            return Ok(VarietyVar::XMinus1);
        }
        let bad = || VarietyError::BadVariable(s.to_string());
        if s.is_empty() || !s.is_char_boundary(1) {
            return Err(bad());
        }
        let (head, rest) = s.split_at(1);
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        match head {
            "x" => Ok(VarietyVar::X { j: a, s: b }),
            "z" => Ok(VarietyVar::Z { a, s: b }),
            _ => Err(bad()),
        }
    }
}

fn x(j: usize, s: i64) -> ParamPoly {
    VarietyVar::x(j, s as usize).poly()
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn c(a: i64, b: i64) -> Rational {
    Rational::from(binomial(a, b))
}

fn add_term(acc: &mut ParamPoly, coef: Rational, m: ParamPoly) {
    if !coef.is_zero() {
        *acc = &*acc + &m.scale(&coef);
    }
}

/// F_{j,q,r}: three binomial-weighted sums of products x_{a,t} x_{b,r−t}.
pub fn gen_f(j: usize, q: usize, r: usize) -> Result<ParamPoly, VarietyError> {
    if j < 2 || j >= q {
        return Err(VarietyError::Index(format!(
            "F needs 2 <= j < q, got j = {}, q = {}",
            j, q
        )));
    }
    let (j, q, r) = (j as i64, q as i64, r as i64);
    let mut acc = ParamPoly::zero();
    for t in 0..=r {
        let mtop = q + (j + t) / 2;
        for l in j..=(j + q - 1) / 2 {
            for m in q + 1..=mtop {
                let k = c(q - l - 1, l - j) * c(j + q - m + t - 1, m - q - 1) * Rational::from(sign(l - j + m - q));
                add_term(&mut acc, k, &x(l as usize, t) * &x(m as usize, r - t));
            }
        }
        for l in j..=(j + q) / 2 {
            for m in q..=mtop {
                let k = c(q - l, l - j) * c(j + q - m + t, m - q) * Rational::from(sign(l - j + m - q));
                add_term(&mut acc, k, &x(l as usize, t) * &x(m as usize, r - t));
            }
        }
        for m in j..=mtop {
            let k = c(2 * q - m + t, m - j) * Rational::from(sign(m - j + 1));
            add_term(&mut acc, k, &x(q as usize, t) * &x(m as usize, r - t));
        }
    }
    Ok(acc)
}

/// G_{j,q,r}: a linear form in the weight r+1 coordinates (r ≥ −1).
pub fn gen_g(j: usize, q: usize, r: i64) -> Result<ParamPoly, VarietyError> {
    if j < 2 || j >= q || r < -1 {
        return Err(VarietyError::Index(format!(
            "G needs 2 <= j < q and r >= -1, got j = {}, q = {}, r = {}",
            j, q, r
        )));
    }
    let (j, q) = (j as i64, q as i64);
    let w = r + 1;
    let mut acc = ParamPoly::zero();
    for l in j..=(j + q - 1) / 2 {
        add_term(
            &mut acc,
            c(q - l - 1, l - j) * Rational::from(sign(l)),
            x(l as usize, w),
        );
    }
    for l in j..=(j + q) / 2 {
        add_term(&mut acc, c(q - l, l - j) * Rational::from(sign(l)), x(l as usize, w));
    }
    add_term(&mut acc, Rational::from(-sign(q)), x(q as usize, w));
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    /// F_{j,q,r}
    F,
    /// F_{j,q,r} ± x_{−1} G_{j,q,r}
    FPlusXG,
    /// x_{−1} G_{j,q,−1}
    XG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub kind: LabelKind,
    pub j: usize,
    pub q: usize,
    pub r: i64,
}

impl Label {
    pub fn f(j: usize, q: usize, r: i64) -> Label {
        Label {
            kind: LabelKind::F,
            j,
            q,
            r,
        }
    }
}

impl Ord for Label {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.j, self.q, self.r, self.kind).cmp(&(o.j, o.q, o.r, o.kind))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            LabelKind::F => "F",
            LabelKind::FPlusXG => "F+xG",
            LabelKind::XG => "xG",
        };
        write!(f, "{}({},{},{})", head, self.j, self.q, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoly {
    pub label: Label,
    pub poly: ParamPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub n: usize,
    pub vars: Vec<VarietyVar>,
    pub polys: Vec<LabeledPoly>,
}

impl PolySystem {
    pub fn new(n: usize, polys: Vec<LabeledPoly>) -> PolySystem {
        let mut s = PolySystem {
            n,
            vars: Vec::new(),
            polys,
        };
        s.recompute_vars();
        s
    }

    fn recompute_vars(&mut self) {
        let mut set = BTreeSet::new();
        for p in &self.polys {
            for v in p.poly.vars() {
                set.insert(v.parse::<VarietyVar>().expect("system variables are variety variables"));
            }
        }
        self.vars = set.into_iter().collect();
    }

    pub fn get(&self, label: &Label) -> Option<&ParamPoly> {
        self.polys.iter().find(|p| p.label == *label).map(|p| &p.poly)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.polys.iter().map(|p| p.label).collect()
    }

    /// Substitutes and expands, dropping polynomials that become zero.
    pub fn substitute(&self, map: &BTreeMap<String, ParamPoly>) -> PolySystem {
        let polys = self
            .polys
            .iter()
            .map(|p| LabeledPoly {
                label: p.label,
                poly: p.poly.substitute(map),
            })
            .filter(|p| !p.poly.is_zero())
            .collect();
        PolySystem::new(self.n, polys)
    }

    /// `label: poly` per line, in label order.
    pub fn export(&self) -> String {
        let mut s = String::new();
        for p in &self.polys {
            s.push_str(&format!("{}: {}\n", p.label, p.poly));
        }
        s
    }
}

/// The defining system of M_n (n ≥ 9), ordered by (j, q, r).
pub fn assemble_system(n: usize) -> Result<PolySystem, VarietyError> {
    if n < 9 {
        return Err(VarietyError::TooSmall(n));
    }
    let mut polys = Vec::new();
    for j in 2..n {
        for q in j + 1..n {
            if j + 2 * q > n {
                break;
            }
            let base = j + 2 * q + 1;
            if n % 2 == 1 {
                for r in 0..=n.saturating_sub(base) {
                    if base + r > n {
                        break;
                    }
                    polys.push(LabeledPoly {
                        label: Label::f(j, q, r as i64),
                        poly: gen_f(j, q, r)?,
                    });
                }
            } else {
                for r in 0.. {
                    if base + r >= n {
                        break;
                    }
                    polys.push(LabeledPoly {
                        label: Label::f(j, q, r as i64),
                        poly: gen_f(j, q, r)?,
                    });
                }
                if base <= n {
                    let r = n - base;
                    let s = sign((n / 2) as i64 - j as i64 - q as i64);
                    let xg = &VarietyVar::XMinus1.poly() * &gen_g(j, q, r as i64)?;
                    let poly = &gen_f(j, q, r)? + &xg.scale(&Rational::from(s));
                    polys.push(LabeledPoly {
                        label: Label {
                            kind: LabelKind::FPlusXG,
                            j,
                            q,
                            r: r as i64,
                        },
                        poly,
                    });
                }
                if j + 2 * q == n {
                    let poly = &VarietyVar::XMinus1.poly() * &gen_g(j, q, -1)?;
                    polys.push(LabeledPoly {
                        label: Label {
                            kind: LabelKind::XG,
                            j,
                            q,
                            r: -1,
                        },
                        poly,
                    });
                }
            }
        }
    }
    polys.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(PolySystem::new(n, polys))
}

/// A linear change of coordinates given by the new coordinates as linear
/// forms in the old ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub forward: Vec<(VarietyVar, ParamPoly)>,
}

impl CoordinateChange {
    pub fn new(forward: Vec<(VarietyVar, ParamPoly)>) -> CoordinateChange {
        CoordinateChange { forward }
    }

    pub fn identity(vars: &[VarietyVar]) -> CoordinateChange {
        CoordinateChange {
            forward: vars.iter().map(|v| (*v, v.poly())).collect(),
        }
    }

    /// Old coordinates as linear forms in the new ones.
    pub fn inverse(&self) -> Result<CoordinateChange, VarietyError> {
        let mut olds = BTreeSet::new();
        for (_, f) in &self.forward {
            if f.total_degree() != 1 || f.terms().iter().any(|(_, m)| m.is_empty()) {
                return Err(VarietyError::NotInvertible(format!("{} is not a linear form", f)));
            }
            for v in f.vars() {
                olds.insert(v.parse::<VarietyVar>()?);
            }
        }
        let olds: Vec<VarietyVar> = olds.into_iter().collect();
        if olds.len() != self.forward.len() {
            return Err(VarietyError::NotInvertible(format!(
                "{} new coordinates in {} old ones",
                self.forward.len(),
                olds.len()
            )));
        }
        let k = olds.len();
        // Augmented Gauss-Jordan on [A | I] with A[new][old].
        let mut a: Vec<Vec<Rational>> = self
            .forward
            .iter()
            .enumerate()
            .map(|(i, (_, f))| {
                let mut row: Vec<Rational> = olds
                    .iter()
                    .map(|o| {
                        f.linear_in(&o.name())
                            .map(|(c, _)| c.constant_value().unwrap())
                            .unwrap_or_else(Rational::zero)
                    })
                    .collect();
                row.extend((0..k).map(|c| if c == i { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..k {
            let p = (col..k)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| VarietyError::NotInvertible("singular coefficient matrix".into()))?;
            a.swap(col, p);
            let inv = a[col][col].inv().unwrap();
            a[col] = a[col].iter().map(|x| x * &inv).collect();
            for r in 0..k {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(pivot.iter()) {
                        *x -= &(&f * p);
                    }
                }
            }
        }
        let inverse = olds
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let mut f = ParamPoly::zero();
                for (c, (new, _)) in self.forward.iter().enumerate() {
                    add_term(&mut f, a[i][k + c].clone(), new.poly());
                }
                (*o, f)
            })
            .collect();
        Ok(CoordinateChange { forward: inverse })
    }
}

/// Rewrites the system in the new coordinates. Coordinates the change does
/// not mention are kept.
pub fn change_coords(sys: &PolySystem, change: &CoordinateChange) -> Result<PolySystem, VarietyError> {
    let inv = change.inverse()?;
    let map: BTreeMap<String, ParamPoly> = inv.forward.iter().map(|(o, f)| (o.name(), f.clone())).collect();
    let kept: BTreeSet<VarietyVar> = sys
        .vars
        .iter()
        .filter(|v| !map.contains_key(&v.name()))
        .copied()
        .collect();
    if let Some((v, _)) = change.forward.iter().find(|(v, _)| kept.contains(v)) {
        return Err(VarietyError::NotInvertible(format!(
            "new coordinate {} clashes with a kept one",
            v
        )));
    }
    Ok(sys.substitute(&map))
}

/// What to set to zero in [`restrict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zeroed {
    Var(VarietyVar),
    /// Every coordinate of this weight (−1 is x_{−1}).
    Weight(i64),
}

pub fn restrict(sys: &PolySystem, zeroed: &[Zeroed]) -> PolySystem {
    let hit = |v: &VarietyVar| {
        zeroed.iter().any(|z| match z {
            Zeroed::Var(w) => w == v,
            Zeroed::Weight(s) => v.weight() == *s,
        })
    };
    let map: BTreeMap<String, ParamPoly> = sys
        .vars
        .iter()
        .filter(|v| hit(v))
        .map(|v| (v.name(), ParamPoly::zero()))
        .collect();
    sys.substitute(&map)
}

/// Every weight class from −1 to n−5 except `keep`.
pub fn all_weights_except(n: usize, keep: i64) -> Vec<Zeroed> {
    (-1..=n as i64 - 5).filter(|&w| w != keep).map(Zeroed::Weight).collect()
}

/// Partial derivatives, rows = polynomials, columns = `sys.vars`.
pub fn jacobian(sys: &PolySystem) -> RatMatrix {
    let rows = sys
        .polys
        .iter()
        .map(|p| sys.vars.iter().map(|v| p.poly.derivative(&v.name())).collect())
        .collect();
    RatMatrix::from_rows(rows)
}

pub type Point = BTreeMap<VarietyVar, Rational>;

fn point_map(sys: &PolySystem, point: &Point) -> Result<BTreeMap<String, Rational>, VarietyError> {
    let mut m = BTreeMap::new();
    for v in &sys.vars {
        let val = point.get(v).ok_or_else(|| VarietyError::Unbound(v.name()))?;
        m.insert(v.name(), val.clone());
    }
    Ok(m)
}

pub fn eval_point(sys: &PolySystem, point: &Point) -> Result<Vec<Rational>, VarietyError> {
    let m = point_map(sys, point)?;
    Ok(sys
        .polys
        .iter()
        .map(|p| p.poly.eval(&m).expect("all variables bound"))
        .collect())
}

/// Rank of the Jacobian at a point.
pub fn jacobian_rank_at(sys: &PolySystem, point: &Point) -> Result<usize, VarietyError> {
    let m = point_map(sys, point)?;
    Ok(jacobian(sys).eval(&m).rank())
}

/// Determinants of all k×k minors built from the first rows and every
/// choice of k columns, used for small singular-locus checks.
pub fn maximal_minors(m: &RatMatrix) -> Vec<ParamPoly> {
    let (r, c) = (m.rows(), m.cols());
    if r > c {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..r).collect();
    loop {
        let sub = RatMatrix::from_rows(
            (0..r)
                .map(|i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect(),
        );
        out.push(det(&sub).expect("square"));
        // Next combination.
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cols[i] < c - r + i {
                cols[i] += 1;
                for k in i + 1..r {
                    cols[k] = cols[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// (weight sum, variable count) of every monomial, with x_{−1} at −1.
pub fn monomial_weights(p: &ParamPoly) -> Result<Vec<(i64, u32)>, VarietyError> {
    let mut out = Vec::new();
    for (_, m) in p.terms() {
        let mut w = 0;
        let mut deg = 0;
        for (v, e) in m {
            w += v.parse::<VarietyVar>()?.weight() * e as i64;
            deg += e;
        }
        out.push((w, deg));
    }
    Ok(out)
}

/// The z-coordinates of the x_{−1} = 0 component of M_10.
pub fn z_map_m10_0() -> CoordinateChange {
    CoordinateChange::new(vec![
        (VarietyVar::z(0, 0), &x(2, 0).scale(&Rational::from(2)) + &x(3, 0)),
        (VarietyVar::z(1, 0), x(3, 0)),
        (VarietyVar::z(2, 0), x(4, 0)),
        (VarietyVar::z(0, 1), (&x(2, 1) + &x(3, 1)).scale(&Rational::from(3))),
        (VarietyVar::z(1, 1), x(3, 1)),
        (VarietyVar::z(2, 1), x(4, 1)),
    ])
}

/// The z-coordinates of the x_{−1} ≠ 0 component of M_10.
pub fn z_map_m10_1() -> CoordinateChange {
    let mut f = z_map_m10_0().forward;
    f.push((VarietyVar::z(0, 2), x(3, 2)));
    f.push((VarietyVar::z(1, 2), &x(2, 2).scale(&Rational::from(2)) + &x(3, 2)));
    CoordinateChange::new(f)
}

/// The z-coordinates used for M_11.
pub fn z_map_m11() -> CoordinateChange {
    let mut f = z_map_m10_0().forward;
    f.push((VarietyVar::z(3, 0), &x(5, 0) - &x(4, 0).scale(&Rational::from(6))));
    f.push((VarietyVar::z(0, 2), &x(2, 2).scale(&Rational::from(2)) + &x(3, 2)));
    f.push((VarietyVar::z(1, 2), x(3, 2)));
    f.push((VarietyVar::z(2, 2), x(4, 2)));
    CoordinateChange::new(f)
}

/// Whether `a = c·b` for some nonzero rational c.
pub fn proportional(a: &ParamPoly, b: &ParamPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.primitive() == b.primitive() || a.primitive() == (-b).primitive()
}

/// Coefficients where `got` and `want` differ after scaling `got` so the
/// leading coefficients agree; empty when they are proportional.
pub fn coefficient_diff(got: &ParamPoly, want: &ParamPoly) -> Vec<(String, Rational, Rational)> {
    if got.is_zero() || want.is_zero() {
        return if got == want {
            Vec::new()
        } else {
            vec![("<all>".into(), Rational::zero(), Rational::zero())]
        };
    }
    let k = &want.leading_coeff() / &got.leading_coeff();
    let g = got.scale(&k);
    let mono = |m: &[(String, u32)]| {
        if m.is_empty() {
            "1".to_string()
        } else {
            m.iter()
                .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{}^{}", v, e) })
                .collect::<Vec<_>>()
                .join("*")
        }
    };
    let mut a: BTreeMap<String, Rational> = g.terms().into_iter().map(|(c, m)| (mono(&m), c)).collect();
    let b: BTreeMap<String, Rational> = want.terms().into_iter().map(|(c, m)| (mono(&m), c)).collect();
    let mut out = Vec::new();
    for (m, cb) in &b {
        let ca = a.remove(m).unwrap_or_else(Rational::zero);
        if &ca != cb {
            out.push((m.clone(), ca, cb.clone()));
        }
    }
    for (m, ca) in a {
        out.push((m, ca, Rational::zero()));
    }
    out
}
