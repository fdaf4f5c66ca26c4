//! Every closed-form bound, written down once. Evaluators elsewhere in
//! this module call into these functions; the expression strings are the
//! human-readable record of what each function computes.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{rising_factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Formula {
    Turan1Lower,
    Turan1Upper,
    Turan2Lower,
    Turan2Upper,
    LogDerivQuadratic,
    LogDerivShifted,
    EnvelopeB1,
    EnvelopeB2,
    GaussRatio,
    EulerNumerator,
    EulerDenominator,
    EulerPeriodicDisplay,
    PeriodicTail,
    FTuranianLower,
    FTuranianUpper,
    GTuranianLower,
    GTuranianUpper,
    HTuranianLower,
    HTuranianUpper,
    FRatioLower,
    GRatioLower,
    HRatioLower,
}

impl Formula {
    pub const ALL: [Formula; 22] = [
        Formula::Turan1Lower,
        Formula::Turan1Upper,
        Formula::Turan2Lower,
        Formula::Turan2Upper,
        Formula::LogDerivQuadratic,
        Formula::LogDerivShifted,
        Formula::EnvelopeB1,
        Formula::EnvelopeB2,
        Formula::GaussRatio,
        Formula::EulerNumerator,
        Formula::EulerDenominator,
        Formula::EulerPeriodicDisplay,
        Formula::PeriodicTail,
        Formula::FTuranianLower,
        Formula::FTuranianUpper,
        Formula::GTuranianLower,
        Formula::GTuranianUpper,
        Formula::HTuranianLower,
        Formula::HTuranianUpper,
        Formula::FRatioLower,
        Formula::GRatioLower,
        Formula::HRatioLower,
    ];

    /// The expression as displayed, before any algebraic rearrangement.
    pub fn expression(self) -> &'static str {
        match self {
            Formula::Turan1Lower => "2x(c-a)/(c)_3",
            Formula::Turan1Upper => "(c-a)/(c(a+1)) * 1F1(a+1;c+1;x)^2",
            Formula::Turan2Lower => "(a-c)/(c(c+1))",
            Formula::Turan2Upper => "(a-c)/(c(c+1)) * 1F1(a+1;c+1;x)^2",
            Formula::LogDerivQuadratic => "(x-c+sqrt((x-c)^2+4ax))/(2x)",
            Formula::LogDerivShifted => "(x-c+1+sqrt((x-c+1)^2+4ax+4c))/(2x+2c/a)",
            Formula::EnvelopeB1 => {
                "(2+2a)^(-b/a) c^((a^2-b)/a) (1+2a-c+x+sqrt(E))^((a^2+b)/(2a)) \
                 / (c^2(a+1)+a-c+(a^2+b)x+(a^2-b)sqrt(E))^((a^2-b)/(2a)) \
                 * exp((x-c-1+sqrt(E))/2), b=(a+1)(a-c), E=(x-c+1)^2+4ax+4c"
            }
            Formula::EnvelopeB2 => {
                "(4ac)^(c/2)/(2a)^a * (2a+sqrt(D)+x-c)^(a-c/2) / (2ax/c+sqrt(D)-(x-c))^(c/2) \
                 * exp((sqrt(D)+x-c)/2), D=(x-c)^2+4ax"
            }
            Formula::GaussRatio => "(c+(a-b+1)x-sqrt((c+(a-b+1)x)^2-4a(c-b+1)x))/(2(a/c)(c-b+1)x)",
            Formula::EulerNumerator => "a_n = (a+n)(b-c-n)x",
            Formula::EulerDenominator => "b_n = c+n+(a-b+n+1)x",
            Formula::EulerPeriodicDisplay => "(c+(a-b+1)x-sqrt((c+(a-b+1)x)^2-4a(c-b)x))/(2(a/c)(c-b)x)",
            Formula::PeriodicTail => "t = a_N/(b_N+t), t = (-b_N+sqrt(b_N^2+4a_N))/2",
            Formula::FTuranianLower => "2x f0 f1 nu^2 (c-a)/(c(c+nu)(c+2nu))",
            Formula::FTuranianUpper => "((a+nu)_nu (c)_nu - (c+nu)_nu (a)_nu)/((c)_nu (a+nu)_nu) * f(nu;x)^2",
            Formula::GTuranianLower => "g0^2 Gamma(a)^2/Gamma(c)^2 [(a)_nu^2/(c)_nu^2 - (a)_2nu/(c)_2nu]",
            Formula::GTuranianUpper => "((c+nu)_nu (a)_nu - (a+nu)_nu (c)_nu)/((a)_nu (c+nu)_nu) * g(nu;x)^2",
            Formula::HTuranianLower => "h0^2 [(c+nu)_nu - (c)_nu]/(Gamma(c+nu) Gamma(c+2nu))",
            Formula::HTuranianUpper => "(1 - (a)_nu (c)_nu/((a+nu)_nu (c+nu)_nu)) * h(nu;x)^2",
            Formula::FRatioLower => "(c+mu)_nu (a)_nu/((a+mu)_nu (c)_nu)",
            Formula::GRatioLower => "(a+mu)_nu (c)_nu/((c+mu)_nu (a)_nu)",
            Formula::HRatioLower => "(a)_nu (c)_nu/((a+mu)_nu (c+mu)_nu)",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn one() -> Rational {
    Rational::one()
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ball(prec: u32, x: &Rational) -> Ball {
    Ball::from_rational(prec, x)
}

pub fn turan1_lower(a: &Rational, c: &Rational, x: &Rational) -> Rational {
    r(2) * x * (c - a) / rising_factorial(c, 3)
}

/// Multiplier of `1F1(a+1;c+1;x)^2`.
pub fn turan1_upper_factor(a: &Rational, c: &Rational) -> Rational {
    (c - a) / (c * (a + one()))
}

pub fn turan2_lower(a: &Rational, c: &Rational) -> Rational {
    (a - c) / (c * (c + one()))
}

/// Multiplier of `1F1(a+1;c+1;x)^2`.
pub fn turan2_upper_factor(a: &Rational, c: &Rational) -> Rational {
    turan2_lower(a, c)
}

/// `(x-c+√D)/(2x)` in the conjugate form `2a/(√D-(x-c))`, finite at `x = 0`.
pub fn logderiv_quadratic(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let xc = x - c;
    let d = &xc * &xc + r(4) * a * x;
    let root = ball(prec, &d).sqrt()?;
    ball(prec, &(r(2) * a)).div(&root.sub(&ball(prec, &xc)))
}

/// `(x-c+1+√E)/(2x+2c/a)` in the conjugate form `2a/(√E-(x-c+1))`.
pub fn logderiv_shifted(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let s = x - c + one();
    let e = &s * &s + r(4) * a * x + r(4) * c;
    let root = ball(prec, &e).sqrt()?;
    ball(prec, &(r(2) * a)).div(&root.sub(&ball(prec, &s)))
}

fn positive_power(base: &Ball, exponent: &Rational, what: &str) -> Result<Ball> {
    if !base.lower().is_sign_positive() || base.lower().is_zero() {
        return Err(Error::Domain(format!("{what} is not positive")));
    }
    base.pow_rational(exponent)
}

pub fn envelope_b1(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let b = (a + one()) * (a - c);
    let a2 = a * a;
    let s = x - c + one();
    let e = &s * &s + r(4) * a * x + r(4) * c;
    let root = ball(prec, &e).sqrt()?;
    let two_a = r(2) * a;

    let k1 = positive_power(&ball(prec, &(r(2) + &two_a)), &(-&b / a), "2+2a")?;
    let k2 = positive_power(&ball(prec, c), &((&a2 - &b) / a), "c")?;
    let base3 = root.add(&ball(prec, &(one() + &two_a - c + x)));
    let k3 = positive_power(&base3, &((&a2 + &b) / &two_a), "B1 numerator base")?;
    let base4 = root
        .mul_rational(&(&a2 - &b))
        .add(&ball(prec, &(c * c * (a + one()) + a - c + (&a2 + &b) * x)));
    let k4 = positive_power(&base4, &((&a2 - &b) / &two_a), "B1 denominator base")?;
    let growth = root.add(&ball(prec, &(x - c - one()))).mul_rational(&Rational::new(1.into(), 2.into())).exp();
    k1.mul(&k2).mul(&k3).div(&k4).map(|v| v.mul(&growth))
}

pub fn envelope_b2(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let xc = x - c;
    let d = &xc * &xc + r(4) * a * x;
    let root = ball(prec, &d).sqrt()?;
    let half_c = c / r(2);
    let two_a = r(2) * a;

    let k1 = positive_power(&ball(prec, &(r(4) * a * c)), &half_c, "4ac")?;
    let k2 = positive_power(&ball(prec, &two_a), a, "2a")?;
    let base3 = root.add(&ball(prec, &(&two_a + &xc)));
    let k3 = positive_power(&base3, &(a - &half_c), "B2 numerator base")?;
    let base4 = root.add(&ball(prec, &(&two_a * x / c - &xc)));
    let k4 = positive_power(&base4, &half_c, "B2 denominator base")?;
    let growth = root.add(&ball(prec, &xc)).mul_rational(&Rational::new(1.into(), 2.into())).exp();
    k1.div(&k2)?.mul(&k3).div(&k4).map(|v| v.mul(&growth))
}

/// The Gauss ratio bound in the conjugate form `2c/(P+√(P²-4a(c-b+1)x))`,
/// `P = c+(a-b+1)x`, which is continuous through `c-b+1 = 0`.
pub fn gauss_ratio(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let p = c + (a - b + one()) * x;
    let q = &p * &p - r(4) * a * (c - b + one()) * x;
    if q < Rational::from_integer(0.into()) {
        return Err(Error::Domain(format!("negative radicand {q} in the Gauss ratio bound")));
    }
    let root = ball(prec, &q).sqrt()?;
    ball(prec, &(r(2) * c)).div(&root.add(&ball(prec, &p)))
}

pub fn euler_numerator(a: &Rational, b: &Rational, c: &Rational, x: &Rational, n: usize) -> Rational {
    let n = r(n as i64);
    (a + &n) * (b - c - &n) * x
}

pub fn euler_denominator(a: &Rational, b: &Rational, c: &Rational, x: &Rational, n: usize) -> Rational {
    let n = r(n as i64);
    c + &n + (a - b + &n + one()) * x
}

/// The displayed closed form of the fraction made 1-periodic from the
/// start, evaluated literally. Needs `x != 0` and `b != c`.
pub fn euler_periodic_display(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let p = c + (a - b + one()) * x;
    let cb = c - b;
    let q = &p * &p - r(4) * a * &cb * x;
    let root = ball(prec, &q).sqrt()?;
    let numer = ball(prec, &p).sub(&root);
    let denom = r(2) * (a / c) * &cb * x;
    if denom == Rational::from_integer(0.into()) {
        return Err(Error::Domain("display is 0/0 at x = 0 or b = c".into()));
    }
    numer.div(&ball(prec, &denom))
}

/// Positive root of `t² + b_N t - a_N = 0`, as `2a_N/(b_N+√(b_N²+4a_N))`.
pub fn periodic_tail(a_n: &Rational, b_n: &Rational, depth: usize, prec: u32) -> Result<Ball> {
    let q = b_n * b_n + r(4) * a_n;
    if q < Rational::from_integer(0.into()) {
        return Err(Error::ComplexTail(depth));
    }
    let root = ball(prec, &q).sqrt()?;
    let denom = root.add(&ball(prec, b_n));
    if denom.contains_zero() {
        return Err(Error::ZeroDenominator(depth));
    }
    ball(prec, &(r(2) * a_n)).div(&denom)
}

pub fn f_turanian_lower(f0: &Rational, f1: &Rational, a: &Rational, c: &Rational, nu: usize, x: &Rational) -> Rational {
    let nu = r(nu as i64);
    r(2) * x * f0 * f1 * &nu * &nu * (c - a) / (c * (c + &nu) * (c + r(2) * &nu))
}

pub fn f_turanian_upper_factor(a: &Rational, c: &Rational, nu: usize) -> Rational {
    let n = r(nu as i64);
    let (an, cn) = (rising_factorial(&(a + &n), nu), rising_factorial(&(c + &n), nu));
    let (a0, c0) = (rising_factorial(a, nu), rising_factorial(c, nu));
    (&an * &c0 - &cn * &a0) / (&c0 * &an)
}

pub fn g_turanian_lower(g0: &Rational, a: &Rational, c: &Rational, nu: usize, prec: u32) -> Result<Ball> {
    let an = rising_factorial(a, nu);
    let cn = rising_factorial(c, nu);
    let bracket = (&an / &cn) * (&an / &cn) - rising_factorial(a, 2 * nu) / rising_factorial(c, 2 * nu);
    let ratio = Interval::gamma(prec, a)?.div(&Interval::gamma(prec, c)?)?;
    let ratio = Ball::from_interval(&ratio);
    Ok(ratio.mul(&ratio).mul_rational(&(g0 * g0 * bracket)))
}

pub fn g_turanian_upper_factor(a: &Rational, c: &Rational, nu: usize) -> Rational {
    let n = r(nu as i64);
    let (an, cn) = (rising_factorial(&(a + &n), nu), rising_factorial(&(c + &n), nu));
    let (a0, c0) = (rising_factorial(a, nu), rising_factorial(c, nu));
    (&cn * &a0 - &an * &c0) / (&a0 * &cn)
}

pub fn h_turanian_lower(h0: &Rational, c: &Rational, nu: usize, prec: u32) -> Result<Ball> {
    let n = r(nu as i64);
    let bracket = rising_factorial(&(c + &n), nu) - rising_factorial(c, nu);
    let denom = Interval::gamma(prec, &(c + &n))?.mul(&Interval::gamma(prec, &(c + r(2) * &n))?);
    let scale = Ball::from_interval(&denom);
    Ball::from_rational(prec, &(h0 * h0 * bracket)).div(&scale)
}

pub fn h_turanian_upper_factor(a: &Rational, c: &Rational, nu: usize) -> Rational {
    let n = r(nu as i64);
    one()
        - rising_factorial(a, nu) * rising_factorial(c, nu)
            / (rising_factorial(&(a + &n), nu) * rising_factorial(&(c + &n), nu))
}

pub fn f_ratio_lower(a: &Rational, c: &Rational, mu: &Rational, nu: usize) -> Rational {
    rising_factorial(&(c + mu), nu) * rising_factorial(a, nu) / (rising_factorial(&(a + mu), nu) * rising_factorial(c, nu))
}

pub fn g_ratio_lower(a: &Rational, c: &Rational, mu: &Rational, nu: usize) -> Rational {
    rising_factorial(&(a + mu), nu) * rising_factorial(c, nu) / (rising_factorial(&(c + mu), nu) * rising_factorial(a, nu))
}

pub fn h_ratio_lower(a: &Rational, c: &Rational, mu: &Rational, nu: usize) -> Rational {
    rising_factorial(a, nu) * rising_factorial(c, nu) / (rising_factorial(&(a + mu), nu) * rising_factorial(&(c + mu), nu))
}
