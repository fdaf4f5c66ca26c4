//! Closed intervals over MPFR floats with outward rounding.

use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;
use rug::float::Round;
use rug::Float;

use crate::error::{Error, Result};
use crate::fps::Sign;
use crate::rational::{is_nonpositive_integer, rising_factorial, to_rug, GammaProduct, Rational};

/// `[lo, hi]` with `lo <= hi`. Every operation rounds `lo` down and `hi`
/// up, so the true value is never lost.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, value: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, value, Round::Down).0
}

fn up<T>(prec: u32, value: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, value, Round::Up).0
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Float::with_val(prec, 0))
    }

    pub fn point(x: Float) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_rational(prec: u32, x: &Rational) -> Self {
        let r = to_rug(x);
        Self {
            lo: down(prec, &r),
            hi: up(prec, &r),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Certified sign, or `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.is_exact_zero() {
            Some(Sign::Zero)
        } else if self.lo > 0 {
            Some(Sign::Positive)
        } else if self.hi < 0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, &self.lo + &self.hi) / 2u32
    }

    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    /// Largest absolute value in the interval.
    pub fn magnitude(&self) -> Float {
        let prec = self.prec();
        let lo = Float::with_val(prec, self.lo.abs_ref());
        let hi = Float::with_val(prec, self.hi.abs_ref());
        if lo > hi {
            lo
        } else {
            hi
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        Self {
            lo: down(prec, &self.lo + &other.lo),
            hi: up(prec, &self.hi + &other.hi),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        Self {
            lo: down(prec, &self.lo - &other.hi),
            hi: up(prec, &self.hi - &other.lo),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(x, y)| down(prec, *x * *y))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("four candidates");
        let hi = pairs
            .iter()
            .map(|(x, y)| up(prec, *x * *y))
            .reduce(|a, b| if b > a { b } else { a })
            .expect("four candidates");
        Self { lo, hi }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.lo <= 0 && other.hi >= 0 {
            return Err(Error::Domain("interval division by a range containing zero".into()));
        }
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(x, y)| down(prec, *x / *y))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("four candidates");
        let hi = pairs
            .iter()
            .map(|(x, y)| up(prec, *x / *y))
            .reduce(|a, b| if b > a { b } else { a })
            .expect("four candidates");
        Ok(Self { lo, hi })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.mul(&Self::from_rational(self.prec(), factor))
    }

    /// Enclosure of `Γ(x)` for rational `x` that is not a pole.
    ///
    /// Shifts `x` up to `y = x + k >= 2`, where Γ is increasing, so the
    /// image of `[y_lo, y_hi]` is `[Γ(y_lo), Γ(y_hi)]`; then divides by the
    /// exact `(x)_k`.
    pub fn gamma(prec: u32, x: &Rational) -> Result<Self> {
        if is_nonpositive_integer(x) {
            return Err(Error::PoleArgument(x.to_string()));
        }
        let two = Rational::from_integer(2.into());
        let k = if *x >= two {
            0
        } else {
            (&two - x)
                .ceil()
                .to_integer()
                .to_usize()
                .ok_or_else(|| Error::Domain(format!("gamma argument {x} too negative")))?
        };
        let y = to_rug(&(x + Rational::from_integer(k.into())));
        let mut lo = down(prec, &y);
        let mut hi = up(prec, &y);
        lo.gamma_round(Round::Down);
        hi.gamma_round(Round::Up);
        let shifted = Self { lo, hi };
        if k == 0 {
            Ok(shifted)
        } else {
            shifted.div(&Self::from_rational(prec, &rising_factorial(x, k)))
        }
    }
}

impl GammaProduct {
    /// Outward-rounded enclosure of the product.
    pub fn enclose(&self, prec: u32) -> Result<Interval> {
        let mut acc = Interval::from_rational(prec, &Rational::from_integer(1.into()));
        for x in &self.numerator {
            acc = acc.mul(&Interval::gamma(prec, x)?);
        }
        for x in &self.denominator {
            acc = acc.div(&Interval::gamma(prec, x)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.20e}, {:.20e}]", self.lo, self.hi)
    }
}
