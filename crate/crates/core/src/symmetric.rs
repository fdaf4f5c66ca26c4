//! Elementary symmetric polynomials and the ratio chain that makes a
//! sequence of hypergeometric terms log-concave.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::CoefficientSequence;
use crate::rational::Rational;

/// Numerator parameters `a_1..a_{q-r}` and denominator parameters
/// `b_1..b_q` of the term `Π(a_i)_n / Π(b_j)_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVectors {
    numerators: Vec<Rational>,
    denominators: Vec<Rational>,
}

impl ParamVectors {
    pub fn new(numerators: Vec<Rational>, denominators: Vec<Rational>) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::Domain("at least one denominator parameter is required".into()));
        }
        if numerators.len() > denominators.len() {
            return Err(Error::LengthMismatch {
                expected: denominators.len(),
                found: numerators.len(),
            });
        }
        for (name, list) in [("numerator", &numerators), ("denominator", &denominators)] {
            if let Some(x) = list.iter().find(|x| !x.is_positive()) {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: x.to_string(),
                });
            }
        }
        Ok(Self {
            numerators,
            denominators,
        })
    }

    pub fn numerators(&self) -> &[Rational] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[Rational] {
        &self.denominators
    }

    pub fn q(&self) -> usize {
        self.denominators.len()
    }

    /// Number of missing numerator parameters.
    pub fn r(&self) -> usize {
        self.denominators.len() - self.numerators.len()
    }
}

/// Every `e_0..e_n` of `xs`, built by adding one variable at a time.
fn all_elementary_symmetric(xs: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); xs.len() + 1];
    e[0] = Rational::one();
    for (i, x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = &e[k - 1] * x;
            e[k] += prev;
        }
    }
    e
}

pub fn elementary_symmetric(k: usize, xs: &[Rational]) -> Result<Rational> {
    if k > xs.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: xs.len(),
        });
    }
    Ok(all_elementary_symmetric(xs).swap_remove(k))
}

/// `e_q(b)/e_{q-r}(a) <= e_{q-1}(b)/e_{q-r-1}(a) <= ... <= e_r(b)`,
/// compared cross-multiplied.
pub fn chain_condition(pv: &ParamVectors) -> bool {
    let eb = all_elementary_symmetric(&pv.denominators);
    let ea = all_elementary_symmetric(&pv.numerators);
    let r = pv.r();
    (1..=pv.numerators.len()).all(|j| &eb[r + j] * &ea[j - 1] <= &eb[r + j - 1] * &ea[j])
}

/// Prefix sums of `b` bounded by those of `a`; both ascending.
pub fn majorization_implies_chain(a_sorted: &[Rational], b_sorted: &[Rational]) -> Result<bool> {
    if a_sorted.len() != b_sorted.len() {
        return Err(Error::LengthMismatch {
            expected: a_sorted.len(),
            found: b_sorted.len(),
        });
    }
    let ascending = |v: &[Rational]| v.windows(2).all(|w| w[0] <= w[1]);
    if !ascending(a_sorted) || !ascending(b_sorted) {
        return Err(Error::UnsortedInput);
    }
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for (a, b) in a_sorted.iter().zip(b_sorted) {
        sa += a;
        sb += b;
        if sb > sa {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f_0..f_horizon` of `Π(a_i)_n / Π(b_j)_n` as an explicit sequence.
pub fn hyper_term_sequence(pv: &ParamVectors, horizon: usize) -> CoefficientSequence {
    let generator = CoefficientSequence::HyperTerm {
        numerators: pv.numerators.clone(),
        denominators: pv.denominators.clone(),
    };
    CoefficientSequence::Explicit(generator.terms(horizon))
}
