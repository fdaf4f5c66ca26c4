//! High-precision evaluation of `pFq` with a certified truncation bound,
//! plus the Kummer and Pfaff transformations and contiguous relations.

use num_traits::{Signed, ToPrimitive, Zero};
use rug::float::Round;
use rug::Float;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::rational::{is_nonpositive_integer, to_f64, to_rug, Rational};

pub const DEFAULT_PRECISION: u32 = 128;

const GUARD_BITS: u32 = 32;
const MAX_TERMS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperParams {
    pub numerators: Vec<Rational>,
    pub denominators: Vec<Rational>,
    pub x: Rational,
}

impl HyperParams {
    pub fn new(numerators: Vec<Rational>, denominators: Vec<Rational>, x: Rational) -> Self {
        Self {
            numerators,
            denominators,
            x,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: Float,
    /// Truncation remainder bound plus accumulated rounding error.
    pub error_bound: Float,
    pub terms_used: usize,
    /// Index from which the geometric tail bound was applied.
    pub tail_start: usize,
    /// Ratio bound used for the tail; zero for terminating series.
    pub tail_ratio: f64,
}

impl EvalResult {
    pub fn ball(&self) -> Ball {
        Ball::new(self.value.clone(), self.error_bound.clone())
    }

    fn from_ball(ball: &Ball, terms_used: usize, tail_start: usize, tail_ratio: f64) -> Self {
        Self {
            value: ball.mid().clone(),
            error_bound: ball.rad().clone(),
            terms_used,
            tail_start,
            tail_ratio,
        }
    }
}

/// Upper bound on `|t_{k+1}/t_k|` valid for every `k >= n`.
///
/// Each numerator is paired with a denominator (the `n!` counts as a
/// denominator with parameter 1); `(α+k)/(β+k)` is monotone in `k`, so it
/// is bounded by `max(1, (α+n)/(β+n))`, and unpaired denominators by
/// `1/(β+n)`.
fn tail_ratio_bound(numerators: &[f64], denominators: &[f64], x: f64, n: usize) -> f64 {
    let n = n as f64;
    let mut nums: Vec<f64> = numerators.to_vec();
    let mut dens: Vec<f64> = denominators.to_vec();
    dens.push(1.0);
    nums.sort_by(|a, b| b.total_cmp(a));
    dens.sort_by(|a, b| b.total_cmp(a));
    let mut rho = x.abs();
    for (i, beta) in dens.iter().enumerate() {
        match nums.get(i) {
            Some(alpha) => rho *= ((alpha + n) / (beta + n)).max(1.0),
            None => rho /= beta + n,
        }
    }
    rho * (1.0 + 1e-12)
}

/// First index past which all shifted parameters are positive.
fn positive_from(params: &[Rational]) -> usize {
    params
        .iter()
        .map(|p| {
            if p.is_positive() {
                0
            } else {
                (-p).floor().to_integer().to_usize().unwrap_or(usize::MAX - 1) + 1
            }
        })
        .max()
        .unwrap_or(0)
}

fn validate(params: &HyperParams) -> Result<bool> {
    if let Some(b) = params.denominators.iter().find(|b| is_nonpositive_integer(b)) {
        return Err(Error::PoleParameter(b.to_string()));
    }
    let terminating = params.numerators.iter().any(is_nonpositive_integer);
    if terminating || params.x.is_zero() {
        return Ok(true);
    }
    let (p, q) = (params.numerators.len(), params.denominators.len());
    let one = Rational::from_integer(1.into());
    if p > q + 1 || (p == q + 1 && params.x.abs() >= one) {
        return Err(Error::DivergentArgument(params.x.to_string()));
    }
    Ok(false)
}

/// Sums the series directly. Stops once the geometric tail bound falls
/// below `2^-prec` relative to the partial sum.
pub fn pfq(params: &HyperParams, prec: u32) -> Result<EvalResult> {
    let terminating = validate(params)?;
    let mut wp = prec + GUARD_BITS;
    loop {
        let result = sum_series(params, prec, wp, terminating)?;
        // retry with more bits when cancellation ate the guard digits
        // the bound always includes one final rounding of |value| 2^-prec
        let target = Float::with_val(64, result.value.abs_ref()) >> (prec as i32 - 1);
        if result.error_bound <= target || wp > 8 * prec + 4096 || result.value.is_zero() {
            return Ok(result);
        }
        let lost = (result.error_bound.to_f64() / target.to_f64()).log2().ceil().max(16.0) as u32;
        wp += lost + 16;
    }
}

fn sum_series(params: &HyperParams, prec: u32, wp: u32, terminating: bool) -> Result<EvalResult> {
    let x = Float::with_val(wp, to_rug(&params.x));
    let nums_f: Vec<f64> = params.numerators.iter().map(to_f64).collect();
    let dens_f: Vec<f64> = params.denominators.iter().map(to_f64).collect();
    let x_f = to_f64(&params.x);
    let n_min = positive_from(&params.numerators).max(positive_from(&params.denominators));
    let p = params.numerators.len();
    let q = params.denominators.len();

    let mut sum = Float::with_val(wp, 1);
    let mut abs_sum = Float::with_val(64, 1);
    let mut term = Float::with_val(wp, 1);
    let mut tail = Float::new(64);
    let mut tail_ratio = 0.0;
    let mut n = 0usize;
    loop {
        if params.x.is_zero() {
            break;
        }
        // t_{n+1} = t_n x Π(a+n) / (Π(b+n) (n+1))
        let shift = Rational::from_integer(n.into());
        for a in &params.numerators {
            term *= Float::with_val(wp, to_rug(&(a + &shift)));
        }
        for b in &params.denominators {
            term /= Float::with_val(wp, to_rug(&(b + &shift)));
        }
        term *= &x;
        term /= (n + 1) as u32;
        n += 1;
        if term.is_zero() {
            break;
        }
        if !terminating && n >= n_min {
            let rho = tail_ratio_bound(&nums_f, &dens_f, x_f, n);
            if rho < 1.0 {
                let bound = Float::with_val_round(64, term.abs_ref(), Round::Up).0 / (1.0 - rho);
                let threshold = Float::with_val(64, sum.abs_ref()) >> (prec as i32 + 2);
                if bound <= threshold {
                    tail = bound;
                    tail_ratio = rho;
                    break;
                }
            }
        }
        sum += &term;
        abs_sum += Float::with_val_round(64, term.abs_ref(), Round::Up).0;
        if n > MAX_TERMS {
            return Err(Error::NoConvergence(MAX_TERMS));
        }
    }
    // each term carries about n (p+q+3) roundings, and the sum n more
    let ops = (n as f64) * ((p + q + 4) as f64) + 8.0;
    let rounding = abs_sum * ops >> (wp as i32 - 1);
    let error_bound = Float::with_val_round(64, &tail + &rounding, Round::Up).0
        + (Float::with_val(64, sum.abs_ref()) >> (prec as i32));
    let mut value = sum;
    value.set_prec(prec);
    Ok(EvalResult {
        value,
        error_bound,
        terms_used: n,
        tail_start: n,
        tail_ratio,
    })
}

/// A prefactor times a hypergeometric call with transformed parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedCall {
    pub prefactor: Prefactor,
    pub params: HyperParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prefactor {
    /// `e^x`
    Exp(Rational),
    /// `base^exponent`, base positive
    Power { base: Rational, exponent: Rational },
}

impl TransformedCall {
    pub fn evaluate(&self, prec: u32) -> Result<EvalResult> {
        let inner = pfq(&self.params, prec + 16)?;
        let factor = match &self.prefactor {
            Prefactor::Exp(x) => Ball::from_rational(prec + 16, x).exp(),
            Prefactor::Power { base, exponent } => {
                Ball::from_rational(prec + 16, base).pow_rational(exponent)?
            }
        };
        let product = factor.mul(&inner.ball());
        let mut out = EvalResult::from_ball(&product, inner.terms_used, inner.tail_start, inner.tail_ratio);
        let wide = out.value.clone();
        out.value.set_prec(prec);
        // the rounding of the midpoint goes into the radius
        let lost = Float::with_val(wide.prec(), &wide - &out.value).abs();
        out.error_bound = Float::with_val_round(out.error_bound.prec().max(64), &out.error_bound + &lost, Round::Up).0;
        Ok(out)
    }
}

/// `1F1(a;c;x) = e^x 1F1(c-a;c;-x)`.
pub fn kummer_transform(a: &Rational, c: &Rational, x: &Rational) -> TransformedCall {
    TransformedCall {
        prefactor: Prefactor::Exp(x.clone()),
        params: HyperParams::new(vec![c - a], vec![c.clone()], -x),
    }
}

/// `2F1(a,b;c;x) = (1-x)^{-a} 2F1(a,c-b;c;x/(x-1))`, for `x < 1`.
pub fn pfaff_transform(a: &Rational, b: &Rational, c: &Rational, x: &Rational) -> Result<TransformedCall> {
    let one = Rational::from_integer(1.into());
    if *x >= one {
        return Err(Error::DivergentArgument(x.to_string()));
    }
    Ok(TransformedCall {
        prefactor: Prefactor::Power {
            base: &one - x,
            exponent: -a,
        },
        params: HyperParams::new(vec![a.clone(), c - b], vec![c.clone()], x / (x - &one)),
    })
}

/// `1F1(a;c;x)`; negative `x` goes through the Kummer transformation.
pub fn hyp1f1(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<EvalResult> {
    if x.is_negative() {
        kummer_transform(a, c, x).evaluate(prec)
    } else {
        pfq(&HyperParams::new(vec![a.clone()], vec![c.clone()], x.clone()), prec)
    }
}

/// `2F1(a,b;c;x)` for `x < 1`; negative `x` goes through Pfaff.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<EvalResult> {
    if x.is_negative() {
        pfaff_transform(a, b, c, x)?.evaluate(prec)
    } else {
        pfq(
            &HyperParams::new(vec![a.clone(), b.clone()], vec![c.clone()], x.clone()),
            prec,
        )
    }
}

fn ball_1f1(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    Ok(hyp1f1(a, c, x, prec)?.ball())
}

fn ball_2f1(a: &Rational, b: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    Ok(hyp2f1(a, b, c, x, prec)?.ball())
}

fn shifted(x: &Rational, k: i64) -> Rational {
    x + Rational::from_integer(k.into())
}

/// `1F1'(a;c;x)/1F1(a;c;x) = (a/c) 1F1(a+1;c+1;x)/1F1(a;c;x)`.
pub fn kummer_log_derivative(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Ball> {
    let wp = prec + 16;
    let upper = ball_1f1(&shifted(a, 1), &shifted(c, 1), x, wp)?;
    let lower = ball_1f1(a, c, x, wp)?;
    Ok(upper.div(&lower)?.mul_rational(&(a / c)))
}

/// `|LHS - RHS|` of a linear relation, with its error radius.
#[derive(Debug, Clone)]
pub struct Residual {
    pub value: Float,
    pub error_bound: Float,
}

impl Residual {
    fn from_difference(lhs: &Ball, rhs: &Ball) -> Self {
        let d = lhs.sub(rhs);
        Self {
            value: Float::with_val(d.prec(), d.mid().abs_ref()),
            error_bound: d.rad().clone(),
        }
    }

    /// Residual indistinguishable from zero at the tracked error.
    pub fn vanishes(&self) -> bool {
        self.value <= self.error_bound
    }
}

fn require_nonzero_x(x: &Rational) -> Result<()> {
    if x.is_zero() {
        Err(Error::Domain("relation has 1/x; x must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `1F1(a+2;c+2;x) = (c+1)(x-c)/((a+1)x) 1F1(a+1;c+1;x) + c(c+1)/((a+1)x) 1F1(a;c;x)`.
pub fn contiguous_residual_1f1(a: &Rational, c: &Rational, x: &Rational, prec: u32) -> Result<Residual> {
    require_nonzero_x(x)?;
    let a1 = shifted(a, 1);
    let c1 = shifted(c, 1);
    if a1.is_zero() {
        return Err(Error::Domain("a+1 must be nonzero".into()));
    }
    let lhs = ball_1f1(&shifted(a, 2), &shifted(c, 2), x, prec)?;
    let first = ball_1f1(&a1, &c1, x, prec)?.mul_rational(&(&c1 * (x - c) / (&a1 * x)));
    let second = ball_1f1(a, c, x, prec)?.mul_rational(&(c * &c1 / (&a1 * x)));
    Ok(Residual::from_difference(&lhs, &first.add(&second)))
}

/// `(a+1)/(c+1) 2F1(a+2,b;c+2;x) = (c+(a-b+1)x)/((c-b+1)x) 2F1(a+1,b;c+1;x) - c/((c-b+1)x) 2F1(a,b;c;x)`.
pub fn contiguous_residual_2f1(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &Rational,
    prec: u32,
) -> Result<Residual> {
    require_nonzero_x(x)?;
    let gap = c - b + Rational::from_integer(1.into());
    if gap.is_zero() {
        return Err(Error::Domain("c-b+1 must be nonzero".into()));
    }
    let a1 = shifted(a, 1);
    let c1 = shifted(c, 1);
    let lhs = ball_2f1(&shifted(a, 2), b, &shifted(c, 2), x, prec)?.mul_rational(&(&a1 / &c1));
    let first = ball_2f1(&a1, b, &c1, x, prec)?.mul_rational(&((c + (a - b + Rational::from_integer(1.into())) * x) / (&gap * x)));
    let second = ball_2f1(a, b, c, x, prec)?.mul_rational(&(c / (&gap * x)));
    Ok(Residual::from_difference(&lhs, &first.sub(&second)))
}

/// Residuals of the four contiguous relations that turn the left side of
/// the Kummer product identity into its right side:
///
/// 1. `1F1(a;c;x) = 1F1(a;c+1;x) + ax/(c(c+1)) 1F1(a+1;c+2;x)`
/// 2. `1F1(a+μ;c+μ;x) = 1F1(a+μ+1;c+μ+1;x) - (c-a)x/((c+μ)(c+μ+1)) 1F1(a+μ+1;c+μ+2;x)`
/// 3. `1F1(a+1;c+1;x) = 1F1(a;c+1;x) + x/(c+1) 1F1(a+1;c+2;x)`
/// 4. `(c+1) 1F1(a;c+1;x) + x 1F1(a+1;c+2;x) = (c+1) 1F1(a+1;c+1;x)`
pub fn kummer_identity_relations(
    a: &Rational,
    c: &Rational,
    mu: &Rational,
    x: &Rational,
    prec: u32,
) -> Result<[Residual; 4]> {
    let f = |p: &Rational, q: &Rational| ball_1f1(p, q, x, prec);
    let c1 = shifted(c, 1);
    let c2 = shifted(c, 2);
    let a1 = shifted(a, 1);
    let am = a + mu;
    let cm = c + mu;

    let r1 = {
        let rhs = f(a, &c1)?.add(&f(&a1, &c2)?.mul_rational(&(a * x / (c * &c1))));
        Residual::from_difference(&f(a, c)?, &rhs)
    };
    let r2 = {
        let coef = (c - a) * x / (&cm * shifted(&cm, 1));
        let rhs = f(&shifted(&am, 1), &shifted(&cm, 1))?
            .sub(&f(&shifted(&am, 1), &shifted(&cm, 2))?.mul_rational(&coef));
        Residual::from_difference(&f(&am, &cm)?, &rhs)
    };
    let r3 = {
        let rhs = f(a, &c1)?.add(&f(&a1, &c2)?.mul_rational(&(x / &c1)));
        Residual::from_difference(&f(&a1, &c1)?, &rhs)
    };
    let r4 = {
        let lhs = f(a, &c1)?.mul_rational(&c1).add(&f(&a1, &c2)?.mul_rational(x));
        Residual::from_difference(&lhs, &f(&a1, &c1)?.mul_rational(&c1))
    };
    Ok([r1, r2, r3, r4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const PREC: u32 = 128;

    fn close(value: &Float, expected: &Float, tol: f64) -> bool {
        let d = Float::with_val(PREC, value - expected).abs();
        d.to_f64() <= tol * expected.to_f64().abs().max(1.0)
    }

    #[test]
    fn confluent_with_equal_parameters_is_exponential() {
        let r = hyp1f1(&int(3), &int(3), &int(1), PREC).unwrap();
        let e = Float::with_val(PREC, 1).exp();
        assert!(close(&r.value, &e, 1e-35));
        assert!(r.error_bound.to_f64() < 1e-35);
    }

    #[test]
    fn gauss_log_case() {
        // 2F1(1,1;2;x) = -ln(1-x)/x
        let r = hyp2f1(&int(1), &int(1), &int(2), &rat(1, 2), PREC).unwrap();
        let expected = Float::with_val(PREC, 2).ln() * 2u32;
        assert!(close(&r.value, &expected, 1e-35));
        assert!(r.tail_ratio > 0.0 && r.tail_ratio < 1.0);
    }

    #[test]
    fn zero_argument_is_one() {
        let r = pfq(&HyperParams::new(vec![rat(1, 3), int(2)], vec![rat(7, 2)], int(0)), PREC).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.error_bound.to_f64() < 1e-38);
    }

    #[test]
    fn terminating_series_is_polynomial() {
        // 2F1(-2,1;1;x) = (1-x)^2
        let r = pfq(&HyperParams::new(vec![int(-2), int(1)], vec![int(1)], int(3)), PREC).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.terms_used, 3);
    }

    #[test]
    fn divergence_and_poles() {
        let diverge = pfq(&HyperParams::new(vec![int(1), int(1)], vec![int(2)], int(1)), PREC);
        assert!(matches!(diverge, Err(Error::DivergentArgument(_))));
        let pole = pfq(&HyperParams::new(vec![int(1)], vec![int(-1)], rat(1, 2)), PREC);
        assert!(matches!(pole, Err(Error::PoleParameter(_))));
    }

    #[test]
    fn kummer_transform_of_equal_parameters() {
        let t = kummer_transform(&int(2), &int(2), &int(-3));
        assert_eq!(t.params.numerators, vec![int(0)]);
        let v = t.evaluate(PREC).unwrap();
        let expected = Float::with_val(PREC, -3).exp();
        assert!(close(&v.value, &expected, 1e-35));
    }

    #[test]
    fn kummer_transform_matches_direct_sum() {
        let direct = pfq(&HyperParams::new(vec![int(1)], vec![int(2)], int(-3)), PREC).unwrap();
        let via = kummer_transform(&int(1), &int(2), &int(-3)).evaluate(PREC).unwrap();
        // (1 - e^{-3})/3
        let expected = (Float::with_val(PREC, 1) - Float::with_val(PREC, -3).exp()) / 3u32;
        assert!(close(&direct.value, &expected, 1e-35));
        assert!(close(&via.value, &expected, 1e-35));
    }

    #[test]
    fn pfaff_is_an_involution_and_matches_log() {
        let t = pfaff_transform(&int(1), &int(1), &int(2), &int(-1)).unwrap();
        let back = pfaff_transform(
            &t.params.numerators[0],
            &t.params.numerators[1],
            &t.params.denominators[0],
            &t.params.x,
        )
        .unwrap();
        assert_eq!(back.params.x, int(-1));
        assert_eq!(back.params.numerators[1], int(1));
        // 2F1(1,1;2;-1) = ln 2
        let v = hyp2f1(&int(1), &int(1), &int(2), &int(-1), PREC).unwrap();
        assert!(close(&v.value, &Float::with_val(PREC, 2).ln(), 1e-35));
        assert!(pfaff_transform(&int(1), &int(1), &int(2), &int(1)).is_err());
    }

    #[test]
    fn log_derivative_examples() {
        let at_zero = kummer_log_derivative(&int(1), &int(2), &int(0), PREC).unwrap();
        assert!(close(at_zero.mid(), &Float::with_val(PREC, 0.5), 1e-35));
        let equal = kummer_log_derivative(&rat(3, 2), &rat(3, 2), &int(4), PREC).unwrap();
        assert!(close(equal.mid(), &Float::with_val(PREC, 1), 1e-30));
        let mid = kummer_log_derivative(&int(1), &int(2), &int(1), PREC).unwrap().to_f64();
        assert!(mid > 0.5 && mid < 1.0);
    }

    #[test]
    fn contiguous_relations_vanish() {
        let r = contiguous_residual_1f1(&int(1), &int(2), &int(1), PREC).unwrap();
        assert!(r.value.to_f64() < 1e-30 && r.vanishes());
        let r = contiguous_residual_2f1(&int(1), &int(2), &int(3), &rat(1, 3), PREC).unwrap();
        assert!(r.value.to_f64() < 1e-30 && r.vanishes());
        assert!(contiguous_residual_1f1(&int(1), &int(2), &int(0), PREC).is_err());
        assert!(contiguous_residual_2f1(&int(1), &int(4), &int(3), &rat(1, 3), PREC).is_err());
        for r in kummer_identity_relations(&rat(3, 2), &rat(5, 2), &rat(7, 3), &rat(9, 4), PREC).unwrap() {
            assert!(r.vanishes(), "{} > {}", r.value, r.error_bound);
        }
    }
}
