use std::fmt;

use super::GradedAlgebra;
use crate::exactnum::ParamPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseAlgebraError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseAlgebraError {}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text form; `parse_algebra(emit_algebra(a)) == a`.
pub fn emit_algebra(a: &GradedAlgebra) -> String {
    let mut s = String::new();
    s.push_str(&format!("q={}\n", a.q));
    s.push_str(&format!("top={}\n", a.top));
    s.push_str(&format!("support={}\n", join(&a.support)));
    s.push_str(&format!("params={}\n", join(&a.params)));
    for ((i, j), v) in &a.constants {
        s.push_str(&format!("lambda {} {} = {}\n", i, j, v));
    }
    s
}

pub fn parse_algebra(text: &str) -> Result<GradedAlgebra, ParseAlgebraError> {
    let mut q = None;
    let mut top = None;
    let mut support: Option<Vec<usize>> = None;
    let mut params: Vec<String> = Vec::new();
    let mut entries: Vec<(usize, usize, usize, ParamPoly)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| ParseAlgebraError { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("lambda") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err("expected `lambda <i> <j> = <poly>`".into()))?;
            let idx: Vec<&str> = lhs.split_whitespace().collect();
            if idx.len() != 2 {
                return Err(err("expected two indices after `lambda`".into()));
            }
            let i: usize = idx[0].parse().map_err(|_| err(format!("bad index `{}`", idx[0])))?;
            let j: usize = idx[1].parse().map_err(|_| err(format!("bad index `{}`", idx[1])))?;
            let v: ParamPoly = rhs.trim().parse().map_err(|e| err(format!("{}", e)))?;
            entries.push((line_no, i, j, v));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("unrecognized line `{}`", line)))?;
        let value = value.trim();
        let int = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| err(format!("bad integer `{}`", s)))
        };
        match key.trim() {
            "q" => q = Some(int(value)?),
            "top" => top = Some(int(value)?),
            "support" => {
                support = Some(value.split(',').map(int).collect::<Result<Vec<_>, _>>()?);
            }
            "params" => {
                params = value
                    .split(',')
                    .map(|p| p.trim())
                    .filter(|p| !p.is_empty())
                    .map(String::from)
                    .collect();
            }
            other => return Err(err(format!("unknown header `{}`", other))),
        }
    }
    let missing = |what: &str| ParseAlgebraError {
        line: 0,
        msg: format!("missing `{}=` header", what),
    };
    let q = q.ok_or_else(|| missing("q"))?;
    let top = top.ok_or_else(|| missing("top"))?;
    let support = support.ok_or_else(|| missing("support"))?;
    let mut a = GradedAlgebra::new(q, top, support).map_err(|e| ParseAlgebraError {
        line: 0,
        msg: e.to_string(),
    })?;
    for p in &params {
        a.declare_param(p);
    }
    for (line, i, j, v) in entries {
        if i == 1 {
            if v != ParamPoly::one() {
                return Err(ParseAlgebraError {
                    line,
                    msg: format!("lambda 1 {} is fixed to 1", j),
                });
            }
            continue;
        }
        a.set(i, j, v).map_err(|e| ParseAlgebraError {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(a)
}
