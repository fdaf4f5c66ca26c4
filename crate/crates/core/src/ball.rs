//! Midpoint-radius numbers: an MPFR value together with an upper bound on
//! its distance from the quantity it approximates.

use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{to_rug, Rational};

const RAD_PREC: u32 = 64;

#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

fn rad_up(x: impl Into<Float>) -> Float {
    let mut r: Float = x.into();
    r.set_prec_round(RAD_PREC, Round::Up);
    r.abs()
}

impl Ball {
    pub fn new(mid: Float, rad: Float) -> Self {
        Self {
            mid,
            rad: rad_up(rad),
        }
    }

    pub fn exact(mid: Float) -> Self {
        Self {
            mid,
            rad: Float::new(RAD_PREC),
        }
    }

    pub fn from_rational(prec: u32, x: &Rational) -> Self {
        let (mid, dir) = Float::with_val_round(prec, to_rug(x), Round::Nearest);
        let mut ball = Self::exact(mid);
        if dir != std::cmp::Ordering::Equal {
            ball.add_rounding();
        }
        ball
    }

    /// Smallest ball around the interval's midpoint that covers it.
    pub fn from_interval(x: &Interval) -> Self {
        let mid = x.midpoint();
        let above = Float::with_val_round(RAD_PREC, x.hi() - &mid, Round::Up).0;
        let below = Float::with_val_round(RAD_PREC, &mid - x.lo(), Round::Up).0;
        Self::new(mid, above.max(&below))
    }

    pub fn from_i64(prec: u32, x: i64) -> Self {
        Self::from_rational(prec, &Rational::from_integer(x.into()))
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Largest possible value.
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + &self.rad, Round::Up).0
    }

    /// Smallest possible value.
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - &self.rad, Round::Down).0
    }

    /// Upper bound on `|value|`.
    pub fn abs_upper(&self) -> Float {
        rad_up(Float::with_val_round(RAD_PREC, self.mid.abs_ref(), Round::Up).0 + &self.rad)
    }

    /// Lower bound on `|value|`, zero if the ball contains zero.
    fn abs_lower(&self) -> Float {
        let m = Float::with_val_round(RAD_PREC, self.mid.abs_ref(), Round::Down).0;
        let d = Float::with_val_round(RAD_PREC, &m - &self.rad, Round::Down).0;
        if d.is_sign_negative() {
            Float::new(RAD_PREC)
        } else {
            d
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// Half an ulp of the midpoint, conservatively doubled.
    fn add_rounding(&mut self) {
        if self.mid.is_zero() {
            return;
        }
        let ulp = Float::with_val(RAD_PREC, self.mid.abs_ref()) >> (self.prec() as i32 - 1);
        self.rad = rad_up(Float::with_val_round(RAD_PREC, &self.rad + &ulp, Round::Up).0);
    }

    fn with_rad(mid: Float, rad: Float) -> Self {
        let mut b = Self {
            mid,
            rad: rad_up(rad),
        };
        b.add_rounding();
        b
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -self.mid.clone(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        Self::with_rad(
            Float::with_val(prec, &self.mid + &other.mid),
            Float::with_val_round(RAD_PREC, &self.rad + &other.rad, Round::Up).0,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        // |a|rb + |b|ra + ra rb
        let a = Float::with_val_round(RAD_PREC, self.mid.abs_ref(), Round::Up).0;
        let b = Float::with_val_round(RAD_PREC, other.mid.abs_ref(), Round::Up).0;
        let rad = a * &other.rad + b * &self.rad + Float::with_val(RAD_PREC, &self.rad * &other.rad);
        Self::with_rad(Float::with_val(prec, &self.mid * &other.mid), rad * 1.000001f64)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let prec = self.prec().max(other.prec());
        let denom_lower = other.abs_lower();
        if denom_lower.is_zero() {
            return Err(Error::Domain("division by a value that may vanish".into()));
        }
        // (|a| rb + |b| ra) / (|b| (|b| - rb))
        let a = Float::with_val_round(RAD_PREC, self.mid.abs_ref(), Round::Up).0;
        let b = Float::with_val_round(RAD_PREC, other.mid.abs_ref(), Round::Up).0;
        let numer = a * &other.rad + b * &self.rad;
        let b_low = Float::with_val_round(RAD_PREC, other.mid.abs_ref(), Round::Down).0;
        let rad = numer / (b_low * &denom_lower);
        Ok(Self::with_rad(
            Float::with_val(prec, &self.mid / &other.mid),
            rad * 1.000001f64,
        ))
    }

    pub fn mul_rational(&self, x: &Rational) -> Self {
        self.mul(&Self::from_rational(self.prec(), x))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let low = self.lower();
        if low.is_sign_negative() && !low.is_zero() {
            return Err(Error::Domain("square root of a possibly negative value".into()));
        }
        let mid = Float::with_val(self.prec(), self.mid.sqrt_ref());
        // |√X - √x| <= r / √(x - r)
        let rad = if self.rad.is_zero() {
            Float::new(RAD_PREC)
        } else if low.is_zero() {
            Float::with_val(RAD_PREC, self.upper().sqrt_ref())
        } else {
            let s = Float::with_val_round(RAD_PREC, low.sqrt_ref(), Round::Down).0;
            Float::with_val(RAD_PREC, &self.rad / &s)
        };
        Ok(Self::with_rad(mid, rad * 1.000001f64))
    }

    pub fn exp(&self) -> Self {
        let mid = Float::with_val(self.prec(), self.mid.exp_ref());
        // e^m (e^r - 1)
        let grow = Float::with_val_round(RAD_PREC, self.rad.exp_m1_ref(), Round::Up).0;
        let rad = Float::with_val_round(RAD_PREC, mid.abs_ref(), Round::Up).0 * grow;
        Self::with_rad(mid, rad * 1.000001f64)
    }

    pub fn ln(&self) -> Result<Self> {
        let low = self.lower();
        if !low.is_sign_positive() || low.is_zero() {
            return Err(Error::Domain("logarithm of a possibly nonpositive value".into()));
        }
        let mid = Float::with_val(self.prec(), self.mid.ln_ref());
        // |ln X - ln x| <= r / (x - r)
        let low = Float::with_val_round(RAD_PREC, &low, Round::Down).0;
        let rad = Float::with_val(RAD_PREC, &self.rad / &low);
        Ok(Self::with_rad(mid, rad * 1.000001f64))
    }

    /// `self^s` for a positive base.
    pub fn pow_rational(&self, s: &Rational) -> Result<Self> {
        if self.rad.is_zero() {
            if self.mid <= 0 {
                return Err(Error::Domain("power of a nonpositive base".into()));
            }
            let exponent = Float::with_val(self.prec() + 16, to_rug(s));
            let mid = Float::with_val(self.prec(), (&self.mid).pow(&exponent));
            return Ok(Self::with_rad(mid, Float::new(RAD_PREC)).widen_relative(4));
        }
        Ok(self.ln()?.mul_rational(s).exp())
    }

    /// Adds `k` ulps of slack relative to the midpoint.
    fn widen_relative(mut self, k: u32) -> Self {
        for _ in 0..k {
            self.add_rounding();
        }
        self
    }

    /// `|self - other| <= rad_self + rad_other + slack`.
    pub fn overlaps(&self, other: &Self) -> bool {
        let diff = Float::with_val_round(RAD_PREC, &self.mid - &other.mid, Round::Down).0.abs();
        diff <= Float::with_val(RAD_PREC, &self.rad + &other.rad)
    }

    /// `self <= other` allowing for both radii.
    pub fn le_within(&self, other: &Self) -> bool {
        self.lower() <= other.upper()
    }

    /// `self < other` with both radii accounted for.
    pub fn lt_certified(&self, other: &Self) -> bool {
        self.upper() < other.lower()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.25e} ± {:.3e}", self.mid, self.rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rational_conversion_tracks_rounding() {
        assert!(Ball::from_rational(64, &rat(1, 2)).rad().is_zero());
        let third = Ball::from_rational(64, &rat(1, 3));
        assert!(!third.rad().is_zero());
        let exact = Float::with_val(256, to_rug(&rat(1, 3)));
        assert!(third.lower() <= exact && exact <= third.upper());
    }

    #[test]
    fn elementary_functions_enclose() {
        let prec = 128;
        let two = Ball::from_i64(prec, 2);
        let s = two.sqrt().unwrap();
        let sq = s.mul(&s);
        assert!(sq.overlaps(&two));
        let e = Ball::from_i64(prec, 1).exp();
        let back = e.ln().unwrap();
        assert!(back.overlaps(&Ball::from_i64(prec, 1)));
        let p = Ball::from_rational(prec, &rat(9, 4)).pow_rational(&rat(1, 2)).unwrap();
        assert!(p.overlaps(&Ball::from_rational(prec, &rat(3, 2))));
        let q = Ball::from_rational(prec, &rat(1, 3)).pow_rational(&rat(-2, 1)).unwrap();
        assert!(q.overlaps(&Ball::from_i64(prec, 9)));
    }

    #[test]
    fn division_by_zero_ball_fails() {
        let z = Ball::from_i64(64, 0);
        assert!(Ball::from_i64(64, 1).div(&z).is_err());
        assert!(Ball::from_i64(64, -1).sqrt().is_err());
    }
}
