use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{bigint_gcd, bigint_lcm, Rational};

/// Natural ordering of variable names: digit runs compare numerically, so
/// `b2 < b10` and `x[2,9] < x[2,10]`.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let nx: BigInt = std::str::from_utf8(&x[..lx]).unwrap().parse().unwrap();
                let ny: BigInt = std::str::from_utf8(&y[..ly]).unwrap().parse().unwrap();
                match nx.cmp(&ny).then(lx.cmp(&ly)) {
                    Ordering::Equal => {
                        x = &x[lx..];
                        y = &y[ly..];
                    }
                    o => return o,
                }
            }
            (Some(c), Some(d)) => match c.cmp(d) {
                Ordering::Equal => {
                    x = &x[1..];
                    y = &y[1..];
                }
                o => return o,
            },
        }
    }
}

/// Exponent vector compared in graded-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals in named variables.
///
/// `vars` lists exactly the variables that occur, in natural name order;
/// every exponent vector has one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rational>,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() {
            out.push(b[j].clone());
            j += 1;
        } else {
            match var_cmp(&a[i], &b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

impl ParamPoly {
    pub fn zero() -> ParamPoly {
        ParamPoly::default()
    }

    pub fn one() -> ParamPoly {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> ParamPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        ParamPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(n: i64) -> ParamPoly {
        ParamPoly::constant(Rational::from(n))
    }

    pub fn var(name: &str) -> ParamPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), Rational::one());
        ParamPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, [(variable, exponent)])` terms.
    pub fn from_terms<'a, I, J>(terms: I) -> ParamPoly
    where
        I: IntoIterator<Item = (Rational, J)>,
        J: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut acc = ParamPoly::zero();
        for (c, powers) in terms {
            let mut t = ParamPoly::constant(c);
            for (v, e) in powers {
                t = &t * &ParamPoly::var(v).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    fn from_raw(vars: Vec<String>, terms: BTreeMap<Mono, Rational>) -> ParamPoly {
        let mut p = ParamPoly { vars, terms };
        p.prune_vars();
        p
    }

    fn prune_vars(&mut self) {
        let n = self.vars.len();
        let used: Vec<bool> = (0..n).map(|k| self.terms.keys().any(|m| m.0[k] > 0)).collect();
        if used.iter().all(|u| *u) {
            return;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, u)| **u).map(|(e, _)| *e);
                (Mono(e.collect()), c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    fn lift(&self, vars: &[String]) -> BTreeMap<Mono, Rational> {
        if vars == self.vars.as_slice() {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (k, &p) in pos.iter().enumerate() {
                    e[p] = m.0[k];
                }
                (Mono(e), c.clone())
            })
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order, as `(coefficient, [(var, exp)])`.
    pub fn terms(&self) -> Vec<(Rational, Vec<(String, u32)>)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let powers = self
                    .vars
                    .iter()
                    .zip(&m.0)
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| (v.clone(), *e))
                    .collect();
                (c.clone(), powers)
            })
            .collect()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.terms.values()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(k) => self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.vars.iter().any(|v| v == var)
    }

    /// Coefficients with respect to `var`: entry `e` multiplies `var^e`.
    pub fn coefficients_in(&self, var: &str) -> Vec<ParamPoly> {
        let k = match self.vars.iter().position(|v| v == var) {
            Some(k) => k,
            None => return vec![self.clone()],
        };
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<BTreeMap<Mono, Rational>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let p = e[k] as usize;
            e[k] = 0;
            parts[p].insert(Mono(e), c.clone());
        }
        parts
            .into_iter()
            .map(|t| ParamPoly::from_raw(self.vars.clone(), t))
            .collect()
    }

    /// The variable if the polynomial involves exactly one.
    pub fn univariate_var(&self) -> Option<&str> {
        if self.vars.len() == 1 {
            Some(&self.vars[0])
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> ParamPoly {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => ParamPoly::zero(),
        }
    }

    /// Integer coefficients with content 1 and a positive leading coefficient.
    pub fn primitive(&self) -> ParamPoly {
        if self.is_zero() {
            return ParamPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = bigint_lcm(&lcm, c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            g = bigint_gcd(&g, &n);
        }
        let mut f = Rational::from_bigints(lcm, g.abs());
        if self.leading_coeff().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn derivative(&self, var: &str) -> ParamPoly {
        let k = match self.vars.iter().position(|v| v == var) {
            Some(k) => k,
            None => return ParamPoly::zero(),
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[k] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let f = Rational::from(e[k] as i64);
            e[k] -= 1;
            terms.insert(Mono(e), c * &f);
        }
        ParamPoly::from_raw(self.vars.clone(), terms)
    }

    /// Simultaneous substitution of polynomials for variables; unbound
    /// variables pass through.
    pub fn substitute(&self, bindings: &BTreeMap<String, ParamPoly>) -> ParamPoly {
        if !self.vars.iter().any(|v| bindings.contains_key(v)) {
            return self.clone();
        }
        let mut powers: Vec<Vec<ParamPoly>> = self
            .vars
            .iter()
            .map(|v| {
                vec![
                    ParamPoly::one(),
                    bindings.get(v).cloned().unwrap_or_else(|| ParamPoly::var(v)),
                ]
            })
            .collect();
        let mut acc = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = &powers[k][powers[k].len() - 1] * &powers[k][1];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn substitute_one(&self, var: &str, value: &ParamPoly) -> ParamPoly {
        let mut b = BTreeMap::new();
        b.insert(var.to_string(), value.clone());
        self.substitute(&b)
    }

    /// Evaluates at rational values; `None` if some variable is unbound.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Option<Rational> {
        let b = point
            .iter()
            .map(|(k, v)| (k.clone(), ParamPoly::constant(v.clone())))
            .collect();
        self.substitute(&b).constant_value()
    }

    /// Clears the denominator of `var = num/den`: returns
    /// `sum_e c_e num^e den^(d-e)` where `d` is the degree in `var`.
    pub fn pseudo_substitute(&self, var: &str, num: &ParamPoly, den: &ParamPoly) -> ParamPoly {
        let cs = self.coefficients_in(var);
        let d = cs.len() - 1;
        let mut acc = ParamPoly::zero();
        for (e, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &num.pow(e as u32)) * &den.pow((d - e) as u32));
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        let vars = merge_vars(&self.vars, &d.vars);
        let dt = ParamPoly {
            vars: vars.clone(),
            terms: d.lift(&vars),
        };
        let (dm, dc) = dt
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut rem = ParamPoly {
            vars: vars.clone(),
            terms: self.lift(&vars),
        };
        let mut quot: BTreeMap<Mono, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.0.iter().zip(&dm.0).any(|(a, b)| a < b) {
                return None;
            }
            let qm = Mono(m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            let qc = &c / &dc;
            for (tm, tc) in &dt.terms {
                let e = Mono(tm.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                let v = tc * &qc;
                let entry = rem.terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry -= &v;
                if entry.is_zero() {
                    rem.terms.remove(&e);
                }
            }
            quot.insert(qm, qc);
        }
        Some(ParamPoly::from_raw(vars, quot))
    }

    /// If the polynomial has degree exactly one in `var`, returns
    /// `(coefficient, remainder)` with `self = coefficient*var + remainder`.
    pub fn linear_in(&self, var: &str) -> Option<(ParamPoly, ParamPoly)> {
        if self.degree_in(var) != 1 {
            return None;
        }
        let mut cs = self.coefficients_in(var);
        let a = cs.pop().unwrap();
        let b = cs.pop().unwrap();
        Some((a, b))
    }

    fn combine(&self, other: &ParamPoly, sign: bool) -> ParamPoly {
        let vars = merge_vars(&self.vars, &other.vars);
        let mut terms = self.lift(&vars);
        let rhs = if vars == other.vars {
            other.terms.clone()
        } else {
            other.lift(&vars)
        };
        for (m, c) in rhs {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            if sign {
                *entry += &c;
            } else {
                *entry -= &c;
            }
            if entry.is_zero() {
                terms.remove(&m);
            }
        }
        ParamPoly::from_raw(vars, terms)
    }

    fn product(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        let vars = merge_vars(&self.vars, &other.vars);
        let a = self.lift(&vars);
        let b = if vars == other.vars {
            other.terms.clone()
        } else {
            other.lift(&vars)
        };
        let mut terms: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e = Mono(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let v = ca * cb;
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += &v;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ParamPoly::from_raw(vars, terms)
    }
}

impl Add<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, true)
    }
}

impl Sub<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, false)
    }
}

impl Mul<&ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.product(rhs)
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        self.combine(&rhs, true)
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        self.combine(&rhs, false)
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        self.product(&rhs)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> ParamPoly {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> ParamPoly {
        ParamPoly::int(n)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{}^{}", v, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", a, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {} in `{}`", self.msg, self.pos + 1, self.input)
    }
}

impl std::error::Error for ParsePolyError {}

struct Parser<'a> {
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParsePolyError {
        ParsePolyError {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.b.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ParamPoly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, ParsePolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    let c = d
                        .constant_value()
                        .and_then(|c| c.inv())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ParamPoly, ParsePolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().unwrap();
                Ok(ParamPoly::constant(Rational::from(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.b.len() && (self.b[self.pos].is_ascii_alphanumeric() || self.b[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                if self.b.get(self.pos) == Some(&b'[') {
                    while self.pos < self.b.len() && self.b[self.pos] != b']' {
                        self.pos += 1;
                    }
                    if self.pos == self.b.len() {
                        return Err(self.err("unterminated `[`"));
                    }
                    self.pos += 1;
                }
                Ok(ParamPoly::var(&self.src[start..self.pos]))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for ParamPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<ParamPoly, ParsePolyError> {
        let mut p = Parser {
            src: s,
            b: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}
