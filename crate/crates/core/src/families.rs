//! The four shift-parameter families and their product differences
//! `φ(μ,ν) = y(μ)y(ν) - y(0)y(μ+ν)` as truncated power series.
//!
//! Every family has the shape `y(μ; x) = P(μ) B(μ; x)` where
//! `B(μ; x) = Σ f_n (a+μ)_n / ((c+μ)_n n!) x^n` and the gamma prefactor is
//!
//! | family | `P(μ)`               |
//! |--------|----------------------|
//! | F      | 1                    |
//! | G      | Γ(a+μ)/Γ(c+μ)        |
//! | H      | 1/Γ(c+μ)             |
//! | Q      | Γ(a+μ)               |
//!
//! The product difference is returned divided by the positive constant
//! `P(0)P(μ+ν)`, i.e. as `R·B(μ)B(ν) - B(0)B(μ+ν)` with cofactor
//! `R = P(μ)P(ν)/(P(0)P(μ+ν))`. `R` is a Pochhammer ratio whenever its
//! gamma arguments pair up by integer differences (always the case when one
//! shift is an integer); otherwise only the interval path applies.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fps::{IntervalSeries, Sign, TruncatedSeries};
use crate::interval::Interval;
use crate::rational::{is_nonpositive_integer, parse_rational, GammaProduct, PochhammerRatio, Rational};

/// The nonnegative coefficients `f_n` weighting the base series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSequence {
    /// `f_n = 1`
    Ones,
    /// `f_n = (b)_n`
    Pochhammer(Rational),
    /// `f_n = Π (a_i)_n / Π (b_j)_n`
    HyperTerm {
        numerators: Vec<Rational>,
        denominators: Vec<Rational>,
    },
    /// Finitely many terms, zero beyond the list.
    Explicit(Vec<Rational>),
}

impl CoefficientSequence {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Ones => Ok(()),
            Self::Pochhammer(b) => non_negative("b", b),
            Self::HyperTerm {
                numerators,
                denominators,
            } => {
                for a in numerators {
                    non_negative("numerator", a)?;
                }
                for b in denominators {
                    if !b.is_positive() {
                        return Err(Error::NonPositiveParameter {
                            name: "denominator",
                            value: b.to_string(),
                        });
                    }
                }
                Ok(())
            }
            Self::Explicit(terms) => {
                if let Some(index) = terms.iter().position(Signed::is_negative) {
                    return Err(Error::NegativeTerm { index });
                }
                if terms.iter().all(Zero::is_zero) {
                    return Err(Error::DegenerateSequence);
                }
                Ok(())
            }
        }
    }

    /// `f_0, ..., f_horizon`.
    pub fn terms(&self, horizon: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(horizon + 1);
        match self {
            Self::Ones => out.resize(horizon + 1, Rational::one()),
            Self::Explicit(terms) => {
                out.extend(terms.iter().take(horizon + 1).cloned());
                out.resize(horizon + 1, Rational::zero());
            }
            Self::Pochhammer(b) => {
                let mut f = Rational::one();
                for n in 0..=horizon {
                    out.push(f.clone());
                    f *= b + Rational::from_integer(n.into());
                }
            }
            Self::HyperTerm {
                numerators,
                denominators,
            } => {
                let mut f = Rational::one();
                for n in 0..=horizon {
                    out.push(f.clone());
                    let shift = Rational::from_integer(n.into());
                    for a in numerators {
                        f *= a + &shift;
                    }
                    for b in denominators {
                        f /= b + &shift;
                    }
                }
            }
        }
        out
    }

    /// `(numerators, denominators)` such that `f_n = Π(a)_n/Π(b)_n`, for
    /// sequences with that closed form.
    pub fn hypergeometric_parameters(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        match self {
            Self::Ones => Some((vec![], vec![])),
            Self::Pochhammer(b) => Some((vec![b.clone()], vec![])),
            Self::HyperTerm {
                numerators,
                denominators,
            } => Some((numerators.clone(), denominators.clone())),
            Self::Explicit(_) => None,
        }
    }
}

fn non_negative(name: &'static str, x: &Rational) -> Result<()> {
    if x.is_negative() {
        Err(Error::NegativeParameter {
            name,
            value: x.to_string(),
        })
    } else {
        Ok(())
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn split_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_rational).collect()
}

/// Text form: `ones`, `poch:b`, `hyper:a1,a2;b1,b2`, `explicit:f0,f1,...`.
impl fmt::Display for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ones => write!(f, "ones"),
            Self::Pochhammer(b) => write!(f, "poch:{b}"),
            Self::HyperTerm {
                numerators,
                denominators,
            } => write!(f, "hyper:{};{}", join(numerators), join(denominators)),
            Self::Explicit(terms) => write!(f, "explicit:{}", join(terms)),
        }
    }
}

impl FromStr for CoefficientSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let bad = || Error::Domain(format!("unrecognised coefficient sequence {s:?}"));
        match kind {
            "ones" if rest.is_empty() => Ok(Self::Ones),
            "poch" => Ok(Self::Pochhammer(parse_rational(rest)?)),
            "hyper" => {
                let (numer, denom) = rest.split_once(';').ok_or_else(bad)?;
                Ok(Self::HyperTerm {
                    numerators: split_list(numer)?,
                    denominators: split_list(denom)?,
                })
            }
            "explicit" => Ok(Self::Explicit(split_list(rest)?)),
            _ => Err(bad()),
        }
    }
}

/// `f_k^2 >= f_{k-1} f_{k+1}` for `1 <= k < horizon`.
pub fn sequence_is_log_concave(seq: &CoefficientSequence, horizon: usize) -> bool {
    let f = seq.terms(horizon);
    (1..horizon).all(|k| &f[k] * &f[k] >= &f[k - 1] * &f[k + 1])
}

/// Nonnegative, not identically zero, and zero only on a prefix or suffix.
pub fn sequence_is_pf2(seq: &CoefficientSequence, horizon: usize) -> bool {
    let f = seq.terms(horizon);
    if f.iter().any(Signed::is_negative) {
        return false;
    }
    let Some(first) = f.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let last = f.iter().rposition(|x| !x.is_zero()).unwrap_or(first);
    f[first..=last].iter().all(|x| !x.is_zero())
}

/// Sign changes in a finite sequence, zeros skipped.
pub fn sign_change_count(values: &[Rational]) -> usize {
    let signs: Vec<Sign> = values
        .iter()
        .map(Sign::of)
        .filter(|s| *s != Sign::Zero)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    F,
    G,
    H,
    Q,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::F => "F",
            Family::G => "G",
            Family::H => "H",
            Family::Q => "Q",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            "H" => Ok(Family::H),
            "Q" => Ok(Family::Q),
            other => Err(Error::Domain(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub a: Rational,
    pub c: Rational,
    pub sequence: CoefficientSequence,
}

impl FamilySpec {
    pub fn new(family: Family, a: Rational, c: Rational, sequence: CoefficientSequence) -> Result<Self> {
        for (name, value) in [("a", &a), ("c", &c)] {
            if !value.is_positive() {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: value.to_string(),
                });
            }
        }
        sequence.validate()?;
        Ok(Self {
            family,
            a,
            c,
            sequence,
        })
    }

    /// The gamma prefactor `P(μ)`.
    pub fn prefactor(&self, mu: &Rational) -> GammaProduct {
        let a = &self.a + mu;
        let c = &self.c + mu;
        match self.family {
            Family::F => GammaProduct::one(),
            Family::G => GammaProduct::new(vec![a], vec![c]),
            Family::H => GammaProduct::new(vec![], vec![c]),
            Family::Q => GammaProduct::new(vec![a], vec![]),
        }
    }

    /// `B(μ)` to the given order.
    pub fn base_series(&self, mu: &Rational, order: usize) -> TruncatedSeries {
        let f = self.sequence.terms(order);
        let a = &self.a + mu;
        let c = &self.c + mu;
        let mut weight = Rational::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for (n, fn_) in f.iter().enumerate() {
            coeffs.push(fn_ * &weight);
            let k = Rational::from_integer(n.into());
            weight *= (&a + &k) / ((&c + &k) * (&k + Rational::one()));
        }
        TruncatedSeries::new(coeffs)
    }

    /// `R = P(μ)P(ν)/(P(0)P(μ+ν))` as a gamma product.
    pub fn cofactor(&self, mu: &Rational, nu: &Rational) -> GammaProduct {
        self.prefactor(mu)
            .times(&self.prefactor(nu))
            .times(&self.normalizer(mu, nu).inverse())
    }

    /// `P(0)P(μ+ν)`, positive for admissible parameters.
    pub fn normalizer(&self, mu: &Rational, nu: &Rational) -> GammaProduct {
        self.prefactor(&Rational::zero()).times(&self.prefactor(&(mu + nu)))
    }
}

/// `y(μ) = prefactor · series`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySeries {
    pub prefactor: GammaProduct,
    pub series: TruncatedSeries,
}

/// `φ(μ,ν) = normalizer · series`, with the exact cofactor used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDifference {
    pub normalizer: GammaProduct,
    pub cofactor: PochhammerRatio,
    pub series: TruncatedSeries,
}

/// Interval counterpart of [`ProductDifference`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalProductDifference {
    pub normalizer: GammaProduct,
    pub cofactor: Interval,
    pub series: IntervalSeries,
}

fn check_shift(name: &'static str, x: &Rational) -> Result<()> {
    if x.is_negative() {
        Err(Error::NegativeShift {
            name,
            value: x.to_string(),
        })
    } else {
        Ok(())
    }
}

pub fn family_series(spec: &FamilySpec, mu: &Rational, order: usize) -> Result<FamilySeries> {
    check_shift("mu", mu)?;
    Ok(FamilySeries {
        prefactor: spec.prefactor(mu),
        series: spec.base_series(mu, order),
    })
}

/// Coefficients of `y(μ)` itself, prefactor included, as enclosures.
pub fn family_series_interval(spec: &FamilySpec, mu: &Rational, order: usize, prec: u32) -> Result<IntervalSeries> {
    let exact = family_series(spec, mu, order)?;
    let prefactor = exact.prefactor.enclose(prec)?;
    Ok(exact.series.to_intervals(prec).scale(&prefactor))
}

/// Exact normalized product difference. Fails with `ExactnessUnavailable`
/// when the cofactor is not a Pochhammer ratio.
pub fn product_difference(spec: &FamilySpec, mu: &Rational, nu: &Rational, order: usize) -> Result<ProductDifference> {
    check_shift("mu", mu)?;
    check_shift("nu", nu)?;
    let cofactor = spec
        .cofactor(mu, nu)
        .to_pochhammer_ratio()
        .map_err(|e| match e {
            Error::UnpairableArguments => Error::ExactnessUnavailable,
            other => other,
        })?;
    let r = cofactor.evaluate();
    let shifted = spec.base_series(mu, order).cauchy_product(&spec.base_series(nu, order));
    let reference = spec
        .base_series(&Rational::zero(), order)
        .cauchy_product(&spec.base_series(&(mu + nu), order));
    let series = if r.is_one() {
        shifted.subtract(&reference)
    } else {
        shifted.scale(&r).subtract(&reference)
    };
    Ok(ProductDifference {
        normalizer: spec.normalizer(mu, nu),
        cofactor,
        series,
    })
}

/// Normalized product difference in outward-rounded interval arithmetic,
/// with the cofactor enclosed through gamma evaluations. Works for any
/// nonnegative shifts.
pub fn product_difference_interval(
    spec: &FamilySpec,
    mu: &Rational,
    nu: &Rational,
    order: usize,
    prec: u32,
) -> Result<IntervalProductDifference> {
    check_shift("mu", mu)?;
    check_shift("nu", nu)?;
    let normalizer = spec.normalizer(mu, nu);
    if mu.is_zero() || nu.is_zero() {
        // y(μ)y(0) - y(0)y(μ) vanishes identically.
        return Ok(IntervalProductDifference {
            normalizer,
            cofactor: Interval::from_rational(prec, &Rational::one()),
            series: IntervalSeries::new(vec![Interval::zero(prec); order + 1]),
        });
    }
    let cofactor = spec.cofactor(mu, nu).enclose(prec)?;
    let enclose = |shift: &Rational| spec.base_series(shift, order).to_intervals(prec);
    let shifted = enclose(mu).cauchy_product(&enclose(nu));
    let reference = enclose(&Rational::zero()).cauchy_product(&enclose(&(mu + nu)));
    let mut series = shifted.scale(&cofactor).subtract(&reference);
    if spec.family == Family::F {
        // constant term f_0^2 - f_0^2
        series.set_coeff(0, Interval::zero(prec));
    }
    Ok(IntervalProductDifference {
        normalizer,
        cofactor,
        series,
    })
}

/// Exact coefficients of `pFq(numerators; denominators; x)` up to `order`.
pub fn pfq_series(numerators: &[Rational], denominators: &[Rational], order: usize) -> Result<TruncatedSeries> {
    if let Some(b) = denominators.iter().find(|b| is_nonpositive_integer(b)) {
        return Err(Error::PoleParameter(b.to_string()));
    }
    let mut term = Rational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coeffs.push(term.clone());
        let k = Rational::from_integer(n.into());
        for a in numerators {
            term *= a + &k;
        }
        for b in denominators {
            term /= b + &k;
        }
        term /= &k + Rational::one();
    }
    Ok(TruncatedSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn kummer(family: Family, a: Rational, c: Rational) -> FamilySpec {
        FamilySpec::new(family, a, c, CoefficientSequence::Ones).unwrap()
    }

    #[test]
    fn explicit_sequence_is_zero_padded() {
        let s = CoefficientSequence::Explicit(vec![int(1), int(2)]);
        assert_eq!(s.terms(3), vec![int(1), int(2), int(0), int(0)]);
        assert_eq!(s.terms(0), vec![int(1)]);
    }

    #[test]
    fn sequence_validation() {
        assert_eq!(
            CoefficientSequence::Explicit(vec![int(0), int(0)]).validate(),
            Err(Error::DegenerateSequence)
        );
        assert_eq!(
            CoefficientSequence::Explicit(vec![int(1), int(-1)]).validate(),
            Err(Error::NegativeTerm { index: 1 })
        );
        assert!(CoefficientSequence::Pochhammer(rat(-1, 2)).validate().is_err());
        assert!(FamilySpec::new(Family::F, int(0), int(1), CoefficientSequence::Ones).is_err());
    }

    #[test]
    fn sequence_text_round_trip() {
        for text in ["ones", "poch:1/2", "hyper:1,3/2;2", "explicit:1,2,0"] {
            let s: CoefficientSequence = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert!("nope".parse::<CoefficientSequence>().is_err());
    }

    #[test]
    fn log_concavity_and_pf2() {
        let binomials = CoefficientSequence::Explicit(vec![int(1), int(3), int(3), int(1)]);
        assert!(sequence_is_log_concave(&binomials, 6));
        assert!(sequence_is_pf2(&binomials, 6));
        let gap = CoefficientSequence::Explicit(vec![int(1), int(0), int(1)]);
        assert!(!sequence_is_log_concave(&gap, 2));
        assert!(!sequence_is_pf2(&gap, 2));
        // (b)_n is log-convex
        assert!(!sequence_is_log_concave(&CoefficientSequence::Pochhammer(int(2)), 5));
        assert!(sequence_is_log_concave(&CoefficientSequence::Ones, 20));
    }

    #[test]
    fn sign_changes() {
        assert_eq!(sign_change_count(&[int(1), int(0), int(-2), int(3)]), 2);
        assert_eq!(sign_change_count(&[]), 0);
    }

    #[test]
    fn kummer_first_coefficients() {
        // a = 1, c = 2, mu = 1: (2)_1/((3)_1 1!) = 2/3
        let s = kummer(Family::F, int(1), int(2)).base_series(&int(1), 3);
        assert_eq!(s.coeff(0), &int(1));
        assert_eq!(s.coeff(1), &rat(2, 3));
    }

    #[test]
    fn f_difference_coefficient_one() {
        // f0 f1 μν(c-a)(2c+μ+ν)/(c(c+μ)(c+ν)(c+μ+ν)) at a=1, c=2, μ=ν=1
        let pd = product_difference(&kummer(Family::F, int(1), int(2)), &int(1), &int(1), 4).unwrap();
        assert_eq!(pd.series.coeff(0), &int(0));
        assert_eq!(pd.series.coeff(1), &rat(1, 12));
    }

    #[test]
    fn g_cofactor_is_pochhammer_ratio() {
        // R = (a)_ν (c+μ)_ν / ((c)_ν (a+μ)_ν)
        let spec = kummer(Family::G, rat(3, 2), int(1));
        let pd = product_difference(&spec, &rat(1, 2), &int(2), 3).unwrap();
        let expected = crate::rational::rising_factorial(&rat(3, 2), 2)
            * crate::rational::rising_factorial(&rat(3, 2), 2)
            / (crate::rational::rising_factorial(&int(1), 2) * crate::rational::rising_factorial(&int(2), 2));
        assert_eq!(pd.cofactor.evaluate(), expected);
    }

    #[test]
    fn non_integer_shifts_need_intervals() {
        let spec = kummer(Family::G, rat(3, 2), int(1));
        let err = product_difference(&spec, &rat(1, 2), &rat(1, 3), 3).unwrap_err();
        assert_eq!(err, Error::ExactnessUnavailable);
        let iv = product_difference_interval(&spec, &rat(1, 2), &rat(1, 3), 3, 128).unwrap();
        assert_eq!(iv.series.order(), 3);
    }

    #[test]
    fn integer_gap_between_a_and_c_pairs_any_shifts() {
        let spec = kummer(Family::G, int(2), int(1));
        assert!(product_difference(&spec, &rat(1, 2), &rat(1, 3), 3).is_ok());
    }

    #[test]
    fn negative_shift_rejected() {
        let spec = kummer(Family::F, int(1), int(2));
        assert!(matches!(
            product_difference(&spec, &int(-1), &int(1), 3),
            Err(Error::NegativeShift { .. })
        ));
    }

    #[test]
    fn pfq_series_of_exponential() {
        let s = pfq_series(&[], &[], 4).unwrap();
        assert_eq!(s.coeff(4), &rat(1, 24));
        assert!(matches!(pfq_series(&[int(1)], &[int(-2)], 3), Err(Error::PoleParameter(_))));
    }

    #[test]
    fn zero_shift_gives_zero_difference() {
        let spec = kummer(Family::H, int(2), int(3));
        let pd = product_difference(&spec, &int(0), &int(2), 5).unwrap();
        assert!(pd.series.is_zero());
    }
}
