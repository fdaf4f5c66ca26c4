//! Sign certification of product differences over finite grids of shifts.
//!
//! A verdict covers exactly the checked coefficients `0..=order`; nothing
//! is claimed beyond that horizon.

mod convexity;
mod lemmas;
mod report;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    product_difference, product_difference_interval, sequence_is_log_concave, sequence_is_pf2, Family, FamilySpec,
};
use crate::fps::{IntervalSeries, Sign, TruncatedSeries};
use crate::rational::{is_integer, Rational};

pub use convexity::{check_multiplicative_convexity, check_reciprocal_log_convexity, CertifiedSeries};
pub use lemmas::{absum_value, check_gosper_antidifference, check_kummer_identity, gosper_alpha, phi_coefficient_one};
pub use report::{ReportSummary, SCHEMA_VERSION};

/// Default precision for the interval fallback.
pub const DEFAULT_INTERVAL_PRECISION: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1FConcave,
    T2FConvex,
    T3GConvex,
    T4GConcave,
    T5HConcave,
    T6QConvex,
    C1Conj,
    C2Conj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExpectedSign {
    NonNegative,
    NonPositive,
}

impl ExpectedSign {
    pub fn admits(self, sign: Sign) -> bool {
        match self {
            ExpectedSign::NonNegative => sign != Sign::Negative,
            ExpectedSign::NonPositive => sign != Sign::Positive,
        }
    }

    /// The sign that contradicts the claim.
    fn violating(self) -> Sign {
        match self {
            ExpectedSign::NonNegative => Sign::Negative,
            ExpectedSign::NonPositive => Sign::Positive,
        }
    }
}

impl TheoremId {
    pub const THEOREMS: [TheoremId; 6] = [
        TheoremId::T1FConcave,
        TheoremId::T2FConvex,
        TheoremId::T3GConvex,
        TheoremId::T4GConcave,
        TheoremId::T5HConcave,
        TheoremId::T6QConvex,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T1FConcave => "T1_F_CONCAVE",
            TheoremId::T2FConvex => "T2_F_CONVEX",
            TheoremId::T3GConvex => "T3_G_CONVEX",
            TheoremId::T4GConcave => "T4_G_CONCAVE",
            TheoremId::T5HConcave => "T5_H_CONCAVE",
            TheoremId::T6QConvex => "T6_Q_CONVEX",
            TheoremId::C1Conj => "C1_CONJ",
            TheoremId::C2Conj => "C2_CONJ",
        }
    }

    pub fn family(self) -> Family {
        match self {
            TheoremId::T1FConcave | TheoremId::T2FConvex | TheoremId::C1Conj => Family::F,
            TheoremId::T3GConvex | TheoremId::T4GConcave | TheoremId::C2Conj => Family::G,
            TheoremId::T5HConcave => Family::H,
            TheoremId::T6QConvex => Family::Q,
        }
    }

    pub fn expected_sign(self) -> ExpectedSign {
        match self {
            TheoremId::T2FConvex | TheoremId::T3GConvex | TheoremId::T6QConvex => ExpectedSign::NonPositive,
            _ => ExpectedSign::NonNegative,
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, TheoremId::C1Conj | TheoremId::C2Conj)
    }

    /// Claims restricted to integer `ν` and `μ >= ν-1`.
    pub fn is_discrete(self) -> bool {
        matches!(self, TheoremId::T1FConcave | TheoremId::T4GConcave | TheoremId::T5HConcave)
    }

    /// Checks the parameter and sequence hypotheses; `Err` holds the reason.
    pub fn parameter_hypothesis(self, spec: &FamilySpec, order: usize) -> std::result::Result<(), String> {
        let (a, c) = (&spec.a, &spec.c);
        let one = Rational::from_integer(1.into());
        let c1 = c + &one;
        let regular = || {
            if sequence_is_log_concave(&spec.sequence, order) && sequence_is_pf2(&spec.sequence, order) {
                Ok(())
            } else {
                Err(format!(
                    "sequence {} is not log-concave without internal zeros through n = {order}",
                    spec.sequence
                ))
            }
        };
        match self {
            TheoremId::T1FConcave | TheoremId::C1Conj => {
                if c < a {
                    return Err(format!("requires c >= a, got a = {a}, c = {c}"));
                }
                regular()
            }
            TheoremId::T2FConvex => {
                if a < c {
                    return Err(format!("requires a >= c, got a = {a}, c = {c}"));
                }
                Ok(())
            }
            TheoremId::T3GConvex => {
                if c < a {
                    return Err(format!("requires c >= a, got a = {a}, c = {c}"));
                }
                Ok(())
            }
            TheoremId::T4GConcave | TheoremId::C2Conj => {
                if a < c {
                    return Err(format!("requires a >= c, got a = {a}, c = {c}"));
                }
                if *a > c1 {
                    regular()
                } else {
                    Ok(())
                }
            }
            TheoremId::T5HConcave => {
                if a >= c && *a <= c1 {
                    Ok(())
                } else {
                    regular()
                }
            }
            TheoremId::T6QConvex => Ok(()),
        }
    }

    /// Checks the shift hypotheses at one grid point.
    pub fn point_hypothesis(self, mu: &Rational, nu: &Rational) -> std::result::Result<(), String> {
        if mu.is_negative() || nu.is_negative() {
            return Err(format!("shifts must be nonnegative, got mu = {mu}, nu = {nu}"));
        }
        if !self.is_discrete() {
            return Ok(());
        }
        // φ is symmetric in (μ, ν), so either orientation qualifies
        let one = Rational::from_integer(1.into());
        let fits = |n: &Rational, m: &Rational| is_integer(n) && *m >= n - &one;
        if fits(nu, mu) || fits(mu, nu) {
            Ok(())
        } else {
            Err(format!("requires integer nu and mu >= nu - 1, got mu = {mu}, nu = {nu}"))
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        let short = key.split('_').next().unwrap_or("");
        let id = match short {
            "T1" => TheoremId::T1FConcave,
            "T2" => TheoremId::T2FConvex,
            "T3" => TheoremId::T3GConvex,
            "T4" => TheoremId::T4GConcave,
            "T5" => TheoremId::T5HConcave,
            "T6" => TheoremId::T6QConvex,
            "C1" => TheoremId::C1Conj,
            "C2" => TheoremId::C2Conj,
            _ => return Err(Error::Domain(format!("unknown theorem id {s:?}"))),
        };
        if key != short && key != id.label() {
            return Err(Error::Domain(format!("unknown theorem id {s:?}")));
        }
        Ok(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Certified,
    /// First coefficient with the forbidden sign. The value is the exact
    /// rational, or the enclosing interval on the float path.
    Violation { index: usize, coefficient: String },
    HypothesisUnmet { reason: String },
    /// Coefficients whose enclosure straddles zero.
    Indeterminate { indices: Vec<usize> },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violation { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointReport {
    pub mu: Rational,
    pub nu: Rational,
    pub verdict: Verdict,
    /// True when the verdict rests on exact rational arithmetic.
    pub exact: bool,
    /// Coefficients that are exactly zero, when known.
    pub zero_coefficients: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub theorem: TheoremId,
    pub spec: FamilySpec,
    pub order: usize,
    pub precision_bits: u32,
    pub points: Vec<PointReport>,
}

impl CertificationReport {
    pub fn all_certified(&self) -> bool {
        self.points.iter().all(|p| p.verdict.is_certified())
    }

    pub fn any_violation(&self) -> bool {
        self.points.iter().any(|p| p.verdict.is_violation())
    }

    pub fn point(&self, mu: &Rational, nu: &Rational) -> Option<&PointReport> {
        self.points.iter().find(|p| &p.mu == mu && &p.nu == nu)
    }
}

/// Verdict for an exact series: certified iff every coefficient has the
/// expected sign; otherwise the first offending index.
pub fn certify_coefficients(series: &TruncatedSeries, expected: ExpectedSign) -> Verdict {
    let bad = expected.violating();
    match series.coeffs().iter().position(|c| Sign::of(c) == bad) {
        Some(index) => Verdict::Violation {
            index,
            coefficient: series.coeff(index).to_string(),
        },
        None => Verdict::Certified,
    }
}

/// Verdict for an enclosed series: a violation needs a certified wrong
/// sign; straddling enclosures make the point indeterminate.
pub fn certify_intervals(series: &IntervalSeries, expected: ExpectedSign) -> Verdict {
    let signs = series.certified_signs();
    let bad = expected.violating();
    if let Some(index) = signs.iter().position(|s| *s == Some(bad)) {
        return Verdict::Violation {
            index,
            coefficient: series.coeff(index).to_string(),
        };
    }
    let indices: Vec<usize> = signs
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| i)
        .collect();
    if indices.is_empty() {
        Verdict::Certified
    } else {
        Verdict::Indeterminate { indices }
    }
}

fn sorted_grid(grid: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
    let mut g = grid.to_vec();
    g.sort();
    g.dedup();
    g
}

fn interval_point(
    spec: &FamilySpec,
    mu: &Rational,
    nu: &Rational,
    order: usize,
    prec: u32,
    expected: ExpectedSign,
) -> PointReport {
    let (verdict, zeros) = match product_difference_interval(spec, mu, nu, order, prec) {
        Ok(pd) => {
            let zeros = pd.series.coeffs().iter().filter(|c| c.is_exact_zero()).count();
            (certify_intervals(&pd.series, expected), Some(zeros))
        }
        Err(e) => (Verdict::HypothesisUnmet { reason: e.to_string() }, None),
    };
    PointReport {
        mu: mu.clone(),
        nu: nu.clone(),
        verdict,
        exact: false,
        zero_coefficients: zeros,
    }
}

fn exact_point(
    spec: &FamilySpec,
    mu: &Rational,
    nu: &Rational,
    order: usize,
    prec: u32,
    expected: ExpectedSign,
) -> PointReport {
    match product_difference(spec, mu, nu, order) {
        Ok(pd) => PointReport {
            mu: mu.clone(),
            nu: nu.clone(),
            verdict: certify_coefficients(&pd.series, expected),
            exact: true,
            zero_coefficients: Some(pd.series.coeffs().iter().filter(|c| c.is_zero()).count()),
        },
        Err(Error::ExactnessUnavailable) => interval_point(spec, mu, nu, order, prec, expected),
        Err(e) => PointReport {
            mu: mu.clone(),
            nu: nu.clone(),
            verdict: Verdict::HypothesisUnmet { reason: e.to_string() },
            exact: true,
            zero_coefficients: None,
        },
    }
}

fn check_family(id: TheoremId, spec: &FamilySpec) -> Result<()> {
    if spec.family != id.family() {
        return Err(Error::FamilyMismatch(id.label().to_string(), spec.family.to_string()));
    }
    Ok(())
}

fn run_grid(
    id: TheoremId,
    spec: &FamilySpec,
    grid: &[(Rational, Rational)],
    order: usize,
    prec: u32,
    evaluate: fn(&FamilySpec, &Rational, &Rational, usize, u32, ExpectedSign) -> PointReport,
) -> CertificationReport {
    let params = id.parameter_hypothesis(spec, order);
    let expected = id.expected_sign();
    let points = sorted_grid(grid)
        .par_iter()
        .map(|(mu, nu)| {
            let unmet = |reason: String| PointReport {
                mu: mu.clone(),
                nu: nu.clone(),
                verdict: Verdict::HypothesisUnmet { reason },
                exact: false,
                zero_coefficients: None,
            };
            if let Err(reason) = &params {
                return unmet(reason.clone());
            }
            if let Err(reason) = id.point_hypothesis(mu, nu) {
                return unmet(reason);
            }
            evaluate(spec, mu, nu, order, prec, expected)
        })
        .collect();
    CertificationReport {
        theorem: id,
        spec: spec.clone(),
        order,
        precision_bits: prec,
        points,
    }
}

/// Certifies a theorem's sign claim at every grid point, exactly where the
/// cofactor is rational and by interval arithmetic otherwise.
pub fn verify_theorem(
    id: TheoremId,
    spec: &FamilySpec,
    grid: &[(Rational, Rational)],
    order: usize,
) -> Result<CertificationReport> {
    verify_theorem_with_precision(id, spec, grid, order, DEFAULT_INTERVAL_PRECISION)
}

pub fn verify_theorem_with_precision(
    id: TheoremId,
    spec: &FamilySpec,
    grid: &[(Rational, Rational)],
    order: usize,
    prec: u32,
) -> Result<CertificationReport> {
    if id.is_conjecture() {
        return Err(Error::Domain(format!("{id} is a conjecture; use explore_conjecture")));
    }
    check_family(id, spec)?;
    Ok(run_grid(id, spec, grid, order, prec, exact_point))
}

/// Interval-guarded sweep for a conjecture over arbitrary shifts.
pub fn explore_conjecture(
    id: TheoremId,
    spec: &FamilySpec,
    grid: &[(Rational, Rational)],
    order: usize,
    prec: u32,
) -> Result<CertificationReport> {
    if !id.is_conjecture() {
        return Err(Error::Domain(format!("{id} is not a conjecture; use verify_theorem")));
    }
    check_family(id, spec)?;
    Ok(run_grid(id, spec, grid, order, prec, interval_point))
}
