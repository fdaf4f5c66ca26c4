//! Closed-form bounds for `1F1`, `2F1` and the Turánians of the four
//! families, each paired with a directly evaluated reference value.

pub mod formulas;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::families::{CoefficientSequence, Family, FamilySpec};
use crate::hyper::{hyp1f1, hyp2f1, kummer_log_derivative, pfq, HyperParams};
use crate::rational::{is_integer, Rational};
use crate::verifier::TheoremId;

pub use formulas::Formula;

const GUARD: u32 = 32;

/// `lower <= reference <= upper`, where either side may be absent.
#[derive(Debug, Clone)]
pub struct BoundTriple {
    pub x: Rational,
    pub lower: Option<Ball>,
    pub reference: Ball,
    pub upper: Option<Ball>,
    pub lower_formula: Option<Formula>,
    pub upper_formula: Option<Formula>,
    /// The lower bound is claimed strict for `x > 0`.
    pub strict_lower: bool,
    pub strict_upper: bool,
}

impl BoundTriple {
    /// Bracketing up to the combined radii.
    pub fn brackets(&self) -> bool {
        self.lower.as_ref().map_or(true, |l| l.le_within(&self.reference))
            && self.upper.as_ref().map_or(true, |u| self.reference.le_within(u))
    }

    /// As [`Self::brackets`], with strict claims at `x > 0` requiring a
    /// certified gap.
    pub fn brackets_strictly(&self) -> bool {
        if !self.brackets() {
            return false;
        }
        if !self.x.is_positive() {
            return true;
        }
        let low = !self.strict_lower || self.lower.as_ref().map_or(true, |l| l.lt_certified(&self.reference));
        let high = !self.strict_upper || self.upper.as_ref().map_or(true, |u| self.reference.lt_certified(u));
        low && high
    }

    pub fn margin_low(&self) -> Option<Ball> {
        self.lower.as_ref().map(|l| self.reference.sub(l))
    }

    pub fn margin_high(&self) -> Option<Ball> {
        self.upper.as_ref().map(|u| u.sub(&self.reference))
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn require_positive(name: &'static str, v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter {
            name,
            value: v.to_string(),
        })
    }
}

fn require_nonnegative_x(x: &Rational) -> Result<()> {
    if x.is_negative() {
        Err(Error::Domain(format!("x = {x} must be nonnegative")))
    } else {
        Ok(())
    }
}

fn f11(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    Ok(hyp1f1(a, c, x, prec)?.ball())
}

/// Turánian bounds for `1F1`. For `c >= a` the reference is
/// `F(a+1;c+1)² - F(a;c)F(a+2;c+2)`; for `a > c` it is
/// `(a/c)F(a+1;c+1)² - ((a+1)/(c+1))F(a;c)F(a+2;c+2)`.
pub fn turan_1f1(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<BoundTriple> {
    require_positive("a", a)?;
    require_positive("c", c)?;
    require_nonnegative_x(x)?;
    let wp = prec + GUARD;
    let one = Rational::one();
    let f0 = f11(a, c, x, wp)?;
    let f1 = f11(&(a + &one), &(c + &one), x, wp)?;
    let f2 = f11(&(a + int(2)), &(c + int(2)), x, wp)?;
    let sq = f1.mul(&f1);
    if c >= a {
        let reference = sq.sub(&f0.mul(&f2));
        Ok(BoundTriple {
            x: x.clone(),
            lower: Some(Ball::from_rational(wp, &formulas::turan1_lower(a, c, x))),
            reference,
            upper: Some(sq.mul_rational(&formulas::turan1_upper_factor(a, c))),
            lower_formula: Some(Formula::Turan1Lower),
            upper_formula: Some(Formula::Turan1Upper),
            strict_lower: a != c,
            strict_upper: false,
        })
    } else {
        let reference = sq.mul_rational(&(a / c)).sub(&f0.mul(&f2).mul_rational(&((a + &one) / (c + &one))));
        Ok(BoundTriple {
            x: x.clone(),
            lower: Some(Ball::from_rational(wp, &formulas::turan2_lower(a, c))),
            reference,
            upper: Some(sq.mul_rational(&formulas::turan2_upper_factor(a, c))),
            lower_formula: Some(Formula::Turan2Lower),
            upper_formula: Some(Formula::Turan2Upper),
            strict_lower: false,
            strict_upper: false,
        })
    }
}

/// Bounds on `1F1'(a;c;x)/1F1(a;c;x)`; which quadratic gives the lower
/// side depends on the sign of `c - a`.
pub fn logderiv_envelope(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<BoundTriple> {
    require_positive("a", a)?;
    require_positive("c", c)?;
    require_nonnegative_x(x)?;
    let wp = prec + GUARD;
    let quadratic = formulas::logderiv_quadratic(a, c, x, wp)?;
    let shifted = formulas::logderiv_shifted(a, c, x, wp)?;
    let reference = kummer_log_derivative(a, c, x, wp)?;
    let (lower, upper, lf, uf) = if c >= a {
        (shifted, quadratic, Formula::LogDerivShifted, Formula::LogDerivQuadratic)
    } else {
        (quadratic, shifted, Formula::LogDerivQuadratic, Formula::LogDerivShifted)
    };
    Ok(BoundTriple {
        x: x.clone(),
        lower: Some(lower),
        reference,
        upper: Some(upper),
        lower_formula: Some(lf),
        upper_formula: Some(uf),
        strict_lower: false,
        strict_upper: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Orientation {
    /// `B1 <= 1F1 <= B2`, for `c >= a`.
    B1Lower,
    /// `B2 <= 1F1 <= B1`, for `a > c`.
    B2Lower,
}

#[derive(Debug, Clone)]
pub struct KummerEnvelope {
    pub b1: Ball,
    pub b2: Ball,
    pub orientation: Orientation,
    pub reference: Ball,
    pub x: Rational,
}

impl KummerEnvelope {
    pub fn triple(&self) -> BoundTriple {
        let (lower, upper, lf, uf) = match self.orientation {
            Orientation::B1Lower => (&self.b1, &self.b2, Formula::EnvelopeB1, Formula::EnvelopeB2),
            Orientation::B2Lower => (&self.b2, &self.b1, Formula::EnvelopeB2, Formula::EnvelopeB1),
        };
        BoundTriple {
            x: self.x.clone(),
            lower: Some(lower.clone()),
            reference: self.reference.clone(),
            upper: Some(upper.clone()),
            lower_formula: Some(lf),
            upper_formula: Some(uf),
            strict_lower: false,
            strict_upper: false,
        }
    }
}

/// The integrated log-derivative bounds, enveloping `1F1(a;c;x)`.
pub fn kummer_envelope(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<KummerEnvelope> {
    require_positive("a", a)?;
    require_positive("c", c)?;
    require_nonnegative_x(x)?;
    let wp = prec + GUARD;
    Ok(KummerEnvelope {
        b1: formulas::envelope_b1(a, c, x, wp)?,
        b2: formulas::envelope_b2(a, c, x, wp)?,
        orientation: if c >= a { Orientation::B1Lower } else { Orientation::B2Lower },
        reference: f11(a, c, x, wp)?,
        x: x.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    Upper,
    Lower,
    Exact,
}

#[derive(Debug, Clone)]
pub struct GaussRatioBound {
    pub bound: Ball,
    pub direction: Direction,
}

/// `r(x) = 2F1(a+1,b;c+1;x)/2F1(a,b;c;x)`.
pub fn gauss_ratio(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let wp = prec + GUARD;
    let one = Rational::one();
    let top = hyp2f1(&(a + &one), b, &(c + &one), x, wp)?.ball();
    let bottom = hyp2f1(a, b, c, x, wp)?.ball();
    top.div(&bottom)
}

/// Bound on `r(x)` from the quadratic inequality; an upper bound when
/// `b > c+1`, a lower bound when `b < c+1`, the exact value at `b = c+1`.
pub fn gauss_ratio_bound(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<GaussRatioBound> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    if c < a {
        return Err(Error::HypothesisUnmet(format!("requires c >= a, got a = {a}, c = {c}")));
    }
    if x.is_negative() || *x >= Rational::one() {
        return Err(Error::Domain(format!("x = {x} must lie in [0, 1)")));
    }
    let gap = c - b + Rational::one();
    let direction = if gap.is_zero() {
        Direction::Exact
    } else if gap.is_negative() {
        Direction::Upper
    } else {
        Direction::Lower
    };
    Ok(GaussRatioBound {
        bound: formulas::gauss_ratio(a, b, c, x, prec + GUARD)?,
        direction,
    })
}

impl GaussRatioBound {
    pub fn triple(&self, x: &Rational, reference: Ball) -> BoundTriple {
        let (lower, upper) = match self.direction {
            Direction::Upper => (None, Some(self.bound.clone())),
            Direction::Lower => (Some(self.bound.clone()), None),
            Direction::Exact => (Some(self.bound.clone()), Some(self.bound.clone())),
        };
        BoundTriple {
            x: x.clone(),
            lower_formula: lower.as_ref().map(|_| Formula::GaussRatio),
            upper_formula: upper.as_ref().map(|_| Formula::GaussRatio),
            lower,
            reference,
            upper,
            strict_lower: false,
            strict_upper: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Truncate after the partial quotient with index `depth`.
    FullEuler { depth: usize },
    /// Keep quotients `0..N` and replace the rest by the 1-periodic
    /// fraction built from quotient `N`.
    PeriodicFrom(usize),
}

/// Euler's fraction `r(x) = c/(a(b-c)x) K a_n/b_n` for the Gauss ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfSpec {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub x: Rational,
    pub tail: TailMode,
}

impl CfSpec {
    pub fn euler(a: Rational, b: Rational, c: Rational, x: Rational, tail: TailMode) -> Self {
        Self { a, b, c, x, tail }
    }

    pub fn numerator(&self, n: usize) -> Rational {
        formulas::euler_numerator(&self.a, &self.b, &self.c, &self.x, n)
    }

    pub fn denominator(&self, n: usize) -> Rational {
        formulas::euler_denominator(&self.a, &self.b, &self.c, &self.x, n)
    }
}

/// Backward evaluation of the fraction. The prefactor `c/(a(b-c)x)`
/// cancels `a_0`, leaving `c/(b_0 + t_1)` with `t_n = a_n/(b_n + t_{n+1})`.
pub fn continued_fraction_eval(cf: &CfSpec, prec: u32) -> Result<Ball> {
    let wp = prec + GUARD;
    match cf.tail {
        TailMode::FullEuler { depth } => {
            let mut t = Rational::zero();
            for n in (1..=depth).rev() {
                let d = cf.denominator(n) + &t;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator(n));
                }
                t = cf.numerator(n) / d;
            }
            let d = cf.denominator(0) + &t;
            if d.is_zero() {
                return Err(Error::ZeroDenominator(0));
            }
            Ok(Ball::from_rational(wp, &(&cf.c / d)))
        }
        TailMode::PeriodicFrom(start) => {
            let mut t = formulas::periodic_tail(&cf.numerator(start), &cf.denominator(start), start, wp)?;
            if start == 0 {
                // c/(a(b-c)x) · t_0 with a_0 = a(b-c)x, i.e. c t_0/a_0
                let d = t.add(&Ball::from_rational(wp, &cf.denominator(0)));
                if d.contains_zero() {
                    return Err(Error::ZeroDenominator(0));
                }
                return Ball::from_rational(wp, &cf.c).div(&d);
            }
            for n in (1..start).rev() {
                let d = t.add(&Ball::from_rational(wp, &cf.denominator(n)));
                if d.contains_zero() {
                    return Err(Error::ZeroDenominator(n));
                }
                t = Ball::from_rational(wp, &cf.numerator(n)).div(&d)?;
            }
            let d = t.add(&Ball::from_rational(wp, &cf.denominator(0)));
            if d.contains_zero() {
                return Err(Error::ZeroDenominator(0));
            }
            Ball::from_rational(wp, &cf.c).div(&d)
        }
    }
}

/// The closed form displayed for the fraction made 1-periodic from `n = 0`.
pub fn euler_periodic_closed_form(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    formulas::euler_periodic_display(a, b, c, x, prec + GUARD)
}

/// `Σ f_n (a+μ)_n/((c+μ)_n n!) x^n` without the gamma prefactor.
pub fn base_value(spec: &FamilySpec, mu: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let am = &spec.a + mu;
    let cm = &spec.c + mu;
    match spec.sequence.hypergeometric_parameters() {
        Some((nums, dens)) if nums.is_empty() && dens.is_empty() => f11(&am, &cm, x, prec),
        Some((nums, dens)) if nums.len() == 1 && dens.is_empty() => Ok(hyp2f1(&am, &nums[0], &cm, x, prec)?.ball()),
        Some((mut nums, mut dens)) => {
            nums.push(am);
            dens.push(cm);
            Ok(pfq(&HyperParams::new(nums, dens, x.clone()), prec)?.ball())
        }
        None => {
            let CoefficientSequence::Explicit(values) = &spec.sequence else {
                unreachable!("only explicit sequences lack hypergeometric parameters")
            };
            let series = spec.base_series(mu, values.len().saturating_sub(1));
            let mut total = Rational::zero();
            let mut power = Rational::one();
            for c in series.coeffs() {
                total += c * &power;
                power *= x;
            }
            Ok(Ball::from_rational(prec, &total))
        }
    }
}

/// `y(μ; x)` including the gamma prefactor.
pub fn family_value(spec: &FamilySpec, mu: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let prefactor = Ball::from_interval(&spec.prefactor(mu).enclose(prec)?);
    Ok(prefactor.mul(&base_value(spec, mu, x, prec)?))
}

fn theorem_for(kind: Family) -> Result<TheoremId> {
    match kind {
        Family::F => Ok(TheoremId::T1FConcave),
        Family::G => Ok(TheoremId::T4GConcave),
        Family::H => Ok(TheoremId::T5HConcave),
        Family::Q => Err(Error::FamilyMismatch("two-sided Turánian bounds".into(), kind.to_string())),
    }
}

const SEQUENCE_HORIZON: usize = 64;

fn checked_spec(kind: Family, a: &Rational, c: &Rational, sequence: &CoefficientSequence) -> Result<FamilySpec> {
    let id = theorem_for(kind)?;
    let spec = FamilySpec::new(kind, a.clone(), c.clone(), sequence.clone())?;
    id.parameter_hypothesis(&spec, SEQUENCE_HORIZON).map_err(Error::HypothesisUnmet)?;
    Ok(spec)
}

/// Two-sided bounds for `y(ν)² - y(0)y(2ν)`.
pub fn turanian_two_sided(
    kind: Family,
    a: &Rational,
    c: &Rational,
    nu: usize,
    x: &Rational,
    sequence: &CoefficientSequence,
    prec: u32,
) -> Result<BoundTriple> {
    if nu == 0 {
        return Err(Error::Domain("nu must be a positive integer".into()));
    }
    require_nonnegative_x(x)?;
    let spec = checked_spec(kind, a, c, sequence)?;
    let wp = prec + GUARD;
    let n = int(nu as i64);
    let y0 = family_value(&spec, &Rational::zero(), x, wp)?;
    let yn = family_value(&spec, &n, x, wp)?;
    let y2n = family_value(&spec, &(int(2) * &n), x, wp)?;
    let sq = yn.mul(&yn);
    let reference = sq.sub(&y0.mul(&y2n));
    let f = sequence.terms(1);
    // strictness needs every f_n > 0
    let positive = !matches!(sequence, CoefficientSequence::Explicit(_));
    let (lower, upper, lf, uf, strict) = match kind {
        Family::F => (
            Ball::from_rational(wp, &formulas::f_turanian_lower(&f[0], &f[1], a, c, nu, x)),
            sq.mul_rational(&formulas::f_turanian_upper_factor(a, c, nu)),
            Formula::FTuranianLower,
            Formula::FTuranianUpper,
            positive && a != c,
        ),
        Family::G => (
            formulas::g_turanian_lower(&f[0], a, c, nu, wp)?,
            sq.mul_rational(&formulas::g_turanian_upper_factor(a, c, nu)),
            Formula::GTuranianLower,
            Formula::GTuranianUpper,
            positive && a != c,
        ),
        Family::H => (
            formulas::h_turanian_lower(&f[0], c, nu, wp)?,
            sq.mul_rational(&formulas::h_turanian_upper_factor(a, c, nu)),
            Formula::HTuranianLower,
            Formula::HTuranianUpper,
            positive,
        ),
        Family::Q => unreachable!(),
    };
    Ok(BoundTriple {
        x: x.clone(),
        lower: Some(lower),
        reference,
        upper: Some(upper),
        lower_formula: Some(lf),
        upper_formula: Some(uf),
        strict_lower: strict,
        strict_upper: false,
    })
}

#[derive(Debug, Clone)]
pub struct RatioBounds {
    /// Exact Pochhammer lower bound.
    pub lower: Rational,
    pub lower_formula: Formula,
    /// `y(0)y(μ+ν)/(y(μ)y(ν))`.
    pub ratio: Ball,
    pub upper: Rational,
}

impl RatioBounds {
    pub fn brackets(&self) -> bool {
        let prec = self.ratio.prec();
        Ball::from_rational(prec, &self.lower).le_within(&self.ratio)
            && self.ratio.le_within(&Ball::from_rational(prec, &self.upper))
    }
}

/// `lower <= y(0)y(μ+ν)/(y(μ)y(ν)) <= 1`.
#[allow(clippy::too_many_arguments)]
pub fn ratio_two_sided(
    kind: Family,
    a: &Rational,
    c: &Rational,
    mu: &Rational,
    nu: &Rational,
    x: &Rational,
    sequence: &CoefficientSequence,
    prec: u32,
) -> Result<RatioBounds> {
    if !is_integer(nu) || !nu.is_positive() {
        return Err(Error::Domain(format!("nu = {nu} must be a positive integer")));
    }
    if mu.is_negative() {
        return Err(Error::NegativeShift {
            name: "mu",
            value: mu.to_string(),
        });
    }
    require_nonnegative_x(x)?;
    let spec = checked_spec(kind, a, c, sequence)?;
    let n = nu.to_integer().try_into().map_err(|_| Error::Domain(format!("nu = {nu} is too large")))?;
    let (lower, lower_formula) = match kind {
        Family::F => (formulas::f_ratio_lower(a, c, mu, n), Formula::FRatioLower),
        Family::G => (formulas::g_ratio_lower(a, c, mu, n), Formula::GRatioLower),
        Family::H => (formulas::h_ratio_lower(a, c, mu, n), Formula::HRatioLower),
        Family::Q => unreachable!(),
    };
    let wp = prec + GUARD;
    // the prefactors combine into 1/R, enclosed as one gamma product
    let inverse_cofactor = Ball::from_interval(&spec.cofactor(mu, nu).inverse().enclose(wp)?);
    let top = base_value(&spec, &Rational::zero(), x, wp)?.mul(&base_value(&spec, &(mu + nu), x, wp)?);
    let bottom = base_value(&spec, mu, x, wp)?.mul(&base_value(&spec, nu, x, wp)?);
    Ok(RatioBounds {
        lower,
        lower_formula,
        ratio: inverse_cofactor.mul(&top.div(&bottom)?),
        upper: Rational::one(),
    })
}
