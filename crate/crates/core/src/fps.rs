//! Formal power series truncated at a fixed order, with exact rational
//! or interval coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Self {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Coefficients `c_0, ..., c_order`; everything beyond is discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list: a series always has order >= 0.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `order` (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        Self::new(out)
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = Rational::zero();
            for i in 0..=k {
                let (x, y) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            out.push(acc);
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn subtract(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn sign_pattern(&self) -> SignPattern {
        SignPattern::from_signs(self.coeffs.iter().map(Sign::of).collect())
    }

    /// Encloses every coefficient at `prec` bits.
    pub fn to_intervals(&self, prec: u32) -> IntervalSeries {
        IntervalSeries::new(self.coeffs.iter().map(|c| Interval::from_rational(prec, c)).collect())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.subtract(rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.cauchy_product(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

pub fn cauchy_product(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a.cauchy_product(b)
}

pub fn subtract(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a.subtract(b)
}

/// Sign of every coefficient plus the first negative and positive index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    pub signs: Vec<Sign>,
    pub first_negative: Option<usize>,
    pub first_positive: Option<usize>,
}

impl SignPattern {
    pub fn from_signs(signs: Vec<Sign>) -> Self {
        let first_negative = signs.iter().position(|s| *s == Sign::Negative);
        let first_positive = signs.iter().position(|s| *s == Sign::Positive);
        Self {
            signs,
            first_negative,
            first_positive,
        }
    }

    pub fn zero_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Zero).count()
    }
}

pub fn sign_pattern(series: &TruncatedSeries) -> SignPattern {
    series.sign_pattern()
}

/// Truncated series with interval coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSeries {
    coeffs: Vec<Interval>,
}

impl IntervalSeries {
    pub fn new(coeffs: Vec<Interval>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Interval {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, value: Interval) {
        self.coeffs[i] = value;
    }

    pub fn scale(&self, factor: &Interval) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(factor)).collect())
    }

    pub fn cauchy_product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let prec = self.coeffs[0].prec();
        let out = (0..=order)
            .map(|k| {
                (0..=k).fold(Interval::zero(prec), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]))
                })
            })
            .collect();
        Self::new(out)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect())
    }

    /// Signs that are certified; `None` where an enclosure straddles zero.
    pub fn certified_signs(&self) -> Vec<Option<Sign>> {
        self.coeffs.iter().map(Interval::sign).collect()
    }
}
