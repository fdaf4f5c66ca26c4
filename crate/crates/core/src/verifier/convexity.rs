//! Numeric consequences of a certified sign: multiplicative convexity and
//! log-convexity of `y -> |φ(1/y)|`.

use num_traits::{Signed, Zero};

use super::{certify_coefficients, ExpectedSign, Verdict};
use crate::error::{Error, Result};
use crate::fps::TruncatedSeries;
use crate::rational::to_f64;

const TOLERANCE: f64 = 1e-12;

/// A truncated series whose coefficients all carry one certified sign,
/// stored with that sign divided out so it is absolutely monotonic.
#[derive(Debug, Clone)]
pub struct CertifiedSeries {
    coeffs: Vec<f64>,
    sign: ExpectedSign,
}

impl CertifiedSeries {
    /// Fails with `Domain` unless every coefficient has the expected sign.
    pub fn new(series: &TruncatedSeries, sign: ExpectedSign) -> Result<Self> {
        if let Verdict::Violation { index, coefficient } = certify_coefficients(series, sign) {
            return Err(Error::Domain(format!(
                "coefficient {index} = {coefficient} breaks the certified sign"
            )));
        }
        let coeffs = series
            .coeffs()
            .iter()
            .map(|c| if c.is_zero() { 0.0 } else { to_f64(&c.abs()) })
            .collect();
        Ok(Self { coeffs, sign })
    }

    pub fn sign(&self) -> ExpectedSign {
        self.sign
    }

    /// `|φ(x)|` by Horner's rule.
    pub fn value(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

fn le_relative(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + TOLERANCE * rhs.abs().max(lhs.abs())
}

/// `f(x^λ y^{1-λ}) <= f(x)^λ f(y)^{1-λ}` at every `λ`, up to a relative
/// tolerance of `1e-12`.
pub fn check_multiplicative_convexity(f: impl Fn(f64) -> f64, x: f64, y: f64, lambdas: &[f64]) -> bool {
    let (fx, fy) = (f(x), f(y));
    lambdas.iter().all(|&l| {
        let point = x.powf(l) * y.powf(1.0 - l);
        le_relative(f(point), fx.powf(l) * fy.powf(1.0 - l))
    })
}

/// Midpoint log-convexity of `y -> |f(1/y)|`: for every pair of grid
/// points, `g((y_i+y_j)/2)^2 <= g(y_i) g(y_j)` within `1e-12`.
pub fn check_reciprocal_log_convexity(f: impl Fn(f64) -> f64, y_grid: &[f64]) -> bool {
    if y_grid.iter().any(|&y| !(y > 0.0)) {
        return false;
    }
    let g = |y: f64| f(1.0 / y).abs();
    let values: Vec<f64> = y_grid.iter().map(|&y| g(y)).collect();
    for i in 0..y_grid.len() {
        for j in i + 1..y_grid.len() {
            let mid = g(0.5 * (y_grid[i] + y_grid[j]));
            if !le_relative(mid * mid, values[i] * values[j]) {
                return false;
            }
        }
    }
    true
}
