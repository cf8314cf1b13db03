//! Line-oriented report text shared by the library and the command line.
//!
//! Structured output is one record per line: tab-separated `key=value`
//! fields in a fixed order, with tabs and newlines inside values replaced
//! by spaces. Identical inputs give byte-identical records.

use crate::extend::ExtensionOutcome;
use crate::liealg::GradedAlgebra;

pub fn record(fields: &[(&str, String)]) -> String {
    let mut line: Vec<String> = Vec::with_capacity(fields.len());
    for (k, v) in fields {
        line.push(format!("{}={}", k, v.replace(['\t', '\n'], " ")));
    }
    let mut s = line.join("\t");
    s.push('\n');
    s
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Nonzero structure constants at `level`, as `i,j=value` pairs.
pub fn level_constants(a: &GradedAlgebra, level: usize) -> Vec<String> {
    a.constants()
        .iter()
        .filter(|((i, j), v)| i + j == level && *i > 1 && !v.is_zero())
        .map(|((i, j), v)| format!("{},{}={}", i, j, v))
        .collect()
}

pub fn extension_structured(o: &ExtensionOutcome) -> String {
    let slot = o.free_slot().map(|(i, j)| format!("{},{}", i, j)).unwrap_or_default();
    let pinned: Vec<String> = o
        .pinned
        .iter()
        .map(|b| {
            format!(
                "{}={}@J({},{},{})",
                b.param, b.value, b.triple.0, b.triple.1, b.triple.2
            )
        })
        .collect();
    let new = o
        .algebra
        .as_ref()
        .map(|a| level_constants(a, o.level))
        .unwrap_or_default();
    record(&[
        ("record", "extension".into()),
        ("level", o.level.to_string()),
        ("kind", o.kind.to_string()),
        ("free_slot", slot),
        ("params", o.fresh_params.join(",")),
        ("pinned", pinned.join(";")),
        ("new", new.join(";")),
        ("constraints", join(&o.constraints, ";")),
        ("genericity", join(&o.genericity, ";")),
    ])
}

pub fn extension_human(o: &ExtensionOutcome) -> String {
    let mut s = format!("level {}: {}\n", o.level, o.kind);
    if let Some((i, j)) = o.free_slot() {
        s.push_str(&format!(
            "  free slot lambda({},{}) = {}\n",
            i,
            j,
            o.fresh_params.last().unwrap()
        ));
    }
    for b in &o.pinned {
        s.push_str(&format!("  fixed {}\n", b));
    }
    if let Some(a) = &o.algebra {
        let new = level_constants(a, o.level);
        if new.is_empty() {
            s.push_str("  new constants: all zero\n");
        } else {
            s.push_str(&format!("  new constants: {}\n", new.join(", ")));
        }
    }
    for c in &o.constraints {
        s.push_str(&format!("  constraint {}\n", c));
    }
    for g in &o.genericity {
        s.push_str(&format!("  assumes {} != 0\n", g));
    }
    s
}
