//! Exact rational arithmetic: Pochhammer symbols, binomials and gamma
//! ratios whose arguments differ by integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_nonpositive_integer(x: &Rational) -> bool {
    is_integer(x) && !x.is_positive()
}

/// Converts a small nonnegative integral rational to `usize`.
pub fn to_usize(x: &Rational) -> Option<usize> {
    if is_integer(x) && !x.is_negative() {
        x.numer().to_usize()
    } else {
        None
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn to_rug(x: &Rational) -> rug::Rational {
    let numer: rug::Integer = x.numer().to_string().parse().expect("integer digits");
    let denom: rug::Integer = x.denom().to_string().parse().expect("integer digits");
    rug::Rational::from((numer, denom))
}

/// Parses `p/q`, an integer, or a decimal with optional exponent
/// (`-1.25`, `3e-2`). Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn rising_factorial(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigInt::one();
    }
    acc
}

/// Binomial coefficient, zero when `k < 0` or `k > m`.
pub fn binomial(m: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > m {
        return BigInt::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Numerator,
    Denominator,
}

/// One factor `(base)_length` raised to +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochhammerFactor {
    pub base: Rational,
    pub length: usize,
    pub exponent: Exponent,
}

/// A product of rising factorials and their reciprocals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PochhammerRatio {
    pub factors: Vec<PochhammerFactor>,
}

impl PochhammerRatio {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn push(&mut self, base: Rational, length: usize, exponent: Exponent) {
        if length > 0 {
            self.factors.push(PochhammerFactor {
                base,
                length,
                exponent,
            });
        }
    }

    /// Exact value. Panics only if a denominator factor vanishes, which
    /// cannot happen for ratios built from pole-free gamma products.
    pub fn evaluate(&self) -> Rational {
        let mut numer = Rational::one();
        let mut denom = Rational::one();
        for f in &self.factors {
            let v = rising_factorial(&f.base, f.length);
            match f.exponent {
                Exponent::Numerator => numer *= v,
                Exponent::Denominator => denom *= v,
            }
        }
        numer / denom
    }
}

impl fmt::Display for PochhammerRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |e: Exponent| {
            self.factors
                .iter()
                .filter(|p| p.exponent == e)
                .map(|p| format!("({})_{}", p.base, p.length))
                .collect::<Vec<_>>()
                .join("")
        };
        let numer = render(Exponent::Numerator);
        let denom = render(Exponent::Denominator);
        let numer = if numer.is_empty() { "1".to_string() } else { numer };
        if denom.is_empty() {
            write!(f, "{numer}")
        } else {
            write!(f, "{numer}/{denom}")
        }
    }
}

/// `Π Γ(numerator_i) / Π Γ(denominator_j)`, kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaProduct {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
}

impl GammaProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(numerator: Vec<Rational>, denominator: Vec<Rational>) -> Self {
        let mut product = Self {
            numerator,
            denominator,
        };
        product.cancel();
        product
    }

    pub fn is_one(&self) -> bool {
        self.numerator.is_empty() && self.denominator.is_empty()
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut numerator = self.numerator.clone();
        numerator.extend(other.numerator.iter().cloned());
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        Self::new(numerator, denominator)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn arguments(&self) -> impl Iterator<Item = &Rational> {
        self.numerator.iter().chain(self.denominator.iter())
    }

    /// True when every gamma argument is positive, hence the product is.
    pub fn is_positive(&self) -> bool {
        self.arguments().all(|x| x.is_positive())
    }

    fn cancel(&mut self) {
        let mut i = 0;
        while i < self.numerator.len() {
            if let Some(j) = self.denominator.iter().position(|d| *d == self.numerator[i]) {
                self.numerator.swap_remove(i);
                self.denominator.swap_remove(j);
            } else {
                i += 1;
            }
        }
        self.numerator.sort();
        self.denominator.sort();
    }

    /// Rewrites the product as rising factorials by pairing numerator and
    /// denominator arguments that differ by integers.
    pub fn to_pochhammer_ratio(&self) -> Result<PochhammerRatio> {
        if let Some(p) = self.arguments().find(|x| is_nonpositive_integer(x)) {
            return Err(Error::PoleArgument(p.to_string()));
        }
        let mut classes: BTreeMap<Rational, (Vec<&Rational>, Vec<&Rational>)> = BTreeMap::new();
        for x in &self.numerator {
            classes.entry(fractional_part(x)).or_default().0.push(x);
        }
        for x in &self.denominator {
            classes.entry(fractional_part(x)).or_default().1.push(x);
        }
        let mut ratio = PochhammerRatio::one();
        for (mut numer, mut denom) in classes.into_values() {
            if numer.len() != denom.len() {
                return Err(Error::UnpairableArguments);
            }
            numer.sort();
            denom.sort();
            for (n, d) in numer.into_iter().zip(denom) {
                let gap = (n - d).to_integer();
                let length = gap.abs().to_usize().ok_or(Error::UnpairableArguments)?;
                // Γ(d+k)/Γ(d) = (d)_k, and Γ(n)/Γ(n+k) = 1/(n)_k
                if gap.is_negative() {
                    ratio.push(n.clone(), length, Exponent::Denominator);
                } else {
                    ratio.push(d.clone(), length, Exponent::Numerator);
                }
            }
        }
        Ok(ratio)
    }

    /// Exact value when the arguments pair up by integer shifts.
    pub fn evaluate_exact(&self) -> Result<Rational> {
        Ok(self.to_pochhammer_ratio()?.evaluate())
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |args: &[Rational]| {
            args.iter()
                .map(|x| format!("Γ({x})"))
                .collect::<Vec<_>>()
                .join("·")
        };
        match (self.numerator.is_empty(), self.denominator.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", render(&self.numerator)),
            (true, false) => write!(f, "1/({})", render(&self.denominator)),
            (false, false) => write!(
                f,
                "{}/({})",
                render(&self.numerator),
                render(&self.denominator)
            ),
        }
    }
}

fn fractional_part(x: &Rational) -> Rational {
    x - Rational::from_integer(x.numer().div_floor(x.denom()))
}

/// `Π Γ(base + s)^{±1}` over the given shifts, evaluated exactly when
/// numerator and denominator arguments pair up by integer differences.
pub fn gamma_ratio_integer_shift(base: &Rational, shifts: &[(Rational, Exponent)]) -> Result<Rational> {
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for (s, e) in shifts {
        let arg = base + s;
        match e {
            Exponent::Numerator => numerator.push(arg),
            Exponent::Denominator => denominator.push(arg),
        }
    }
    GammaProduct::new(numerator, denominator).evaluate_exact()
}
