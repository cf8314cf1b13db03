use std::fmt;

use super::{AlgebraError, GradedAlgebra};
use crate::exactnum::{ParamPoly, Rational};

/// Scalings e_1 ↦ α_1 e'_1, e_q ↦ α_q e'_q; the rest follow from
/// α_i = α_1^{i−q} α_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub alpha1: ParamPoly,
    pub alphaq: ParamPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotIsomorphic {
    /// λ_{i,j} vanishes in exactly one of the two algebras.
    ZeroPattern { pair: (usize, usize), zero_in_first: bool },
    /// Two pairs force different values of α_q / α_1^q.
    RatioMismatch {
        first: ((usize, usize), Rational),
        second: ((usize, usize), Rational),
    },
}

impl fmt::Display for NotIsomorphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotIsomorphic::ZeroPattern { pair, zero_in_first } => write!(
                f,
                "lambda({},{}) is zero in the {} algebra only",
                pair.0,
                pair.1,
                if *zero_in_first { "first" } else { "second" }
            ),
            NotIsomorphic::RatioMismatch { first, second } => write!(
                f,
                "lambda({},{}) forces ratio {} but lambda({},{}) forces {}",
                first.0 .0, first.0 .1, first.1, second.0 .0, second.0 .1, second.1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    Isomorphic(IsoWitness),
    NotIsomorphic(NotIsomorphic),
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Decides whether a diagonal graded map e_i ↦ α_i e'_i is an isomorphism.
///
/// With α_{i+1} = α_1 α_i the condition on λ_{i,j} (i, j ≥ q) reads
/// λ_{i,j} α_{i+j} = α_i α_j λ'_{i,j}, i.e. λ_{i,j} = μ λ'_{i,j} with the
/// single unknown μ = α_q / α_1^q.
pub fn graded_iso(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<IsoResult, AlgebraError> {
    if a.q != b.q || a.top != b.top || a.support != b.support {
        return Err(AlgebraError::Mismatch(format!(
            "q/top/support differ: ({}, {}) vs ({}, {})",
            a.q, a.top, b.q, b.top
        )));
    }
    if !a.is_parameter_free() || !b.is_parameter_free() {
        return Err(AlgebraError::Mismatch(
            "graded_iso needs parameter-free algebras".into(),
        ));
    }
    let mut keys: Vec<(usize, usize)> = a.constants.keys().chain(b.constants.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let mut ratio: Option<((usize, usize), Rational)> = None;
    for pair in keys {
        let x = a.lambda(pair.0, pair.1).constant_value().unwrap();
        let y = b.lambda(pair.0, pair.1).constant_value().unwrap();
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => {
                return Ok(IsoResult::NotIsomorphic(NotIsomorphic::ZeroPattern {
                    pair,
                    zero_in_first: x.is_zero(),
                }))
            }
            _ => {}
        }
        let mu = &x / &y;
        match &ratio {
            None => ratio = Some((pair, mu)),
            Some((p0, m0)) if *m0 != mu => {
                return Ok(IsoResult::NotIsomorphic(NotIsomorphic::RatioMismatch {
                    first: (*p0, m0.clone()),
                    second: (pair, mu),
                }))
            }
            _ => {}
        }
    }
    let mu = ratio.map(|(_, m)| m).unwrap_or_else(Rational::one);
    Ok(IsoResult::Isomorphic(IsoWitness {
        alpha1: ParamPoly::one(),
        alphaq: ParamPoly::constant(mu),
    }))
}

impl IsoWitness {
    /// α_i for a degree i in the support.
    pub fn alpha(&self, q: usize, i: usize) -> ParamPoly {
        if i == 1 {
            return self.alpha1.clone();
        }
        &self.alpha1.pow((i - q) as u32) * &self.alphaq
    }

    /// Checks λ_{i,j} α_{i+j} = α_i α_j λ'_{i,j} for every pair, including
    /// the brackets with e_1.
    pub fn verify(&self, a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
        let q = a.q;
        for (x, &i) in a.support.iter().enumerate() {
            for &j in &a.support[x + 1..] {
                if i + j > a.top {
                    break;
                }
                if !a.in_support(i + j) {
                    continue;
                }
                let lhs = &a.lambda(i, j) * &self.alpha(q, i + j);
                let rhs = &(&self.alpha(q, i) * &self.alpha(q, j)) * &b.lambda(i, j);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Witness for the inverse map.
    pub fn inverse(&self) -> Option<IsoWitness> {
        let a1 = self.alpha1.constant_value()?.inv()?;
        let aq = self.alphaq.constant_value()?.inv()?;
        Some(IsoWitness {
            alpha1: ParamPoly::constant(a1),
            alphaq: ParamPoly::constant(aq),
        })
    }

    /// Witness for `other ∘ self`.
    pub fn compose(&self, other: &IsoWitness) -> IsoWitness {
        IsoWitness {
            alpha1: &self.alpha1 * &other.alpha1,
            alphaq: &self.alphaq * &other.alphaq,
        }
    }
}
