//! Exact checks of the auxiliary identities behind the sign theorems.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::{pfq_series, Family, FamilySpec};
use crate::fps::TruncatedSeries;
use crate::rational::{binomial, is_nonpositive_integer, rising_factorial, Rational};

fn one() -> Rational {
    Rational::one()
}

fn kummer(a: &Rational, c: &Rational, order: usize) -> Result<TruncatedSeries> {
    pfq_series(std::slice::from_ref(a), std::slice::from_ref(c), order)
}

/// `LHS - RHS` of the three-term product identity for `1F1`, as a series
/// in `x` through `order`. Identically zero when the identity holds.
///
/// LHS = F(a+μ;c+μ)F(a+1;c+1) - F(a+μ+1;c+μ+1)F(a;c)
/// RHS = (c-a)x / (c(c+1)(c+μ)(c+μ+1)) ·
///       [(c+μ)(c+μ+1) F(a+1;c+2)F(a+μ+1;c+μ+1) - c(c+1) F(a+1;c+1)F(a+μ+1;c+μ+2)]
pub fn check_kummer_identity(a: &Rational, c: &Rational, mu: &Rational, order: usize) -> Result<TruncatedSeries> {
    let cm = c + mu;
    for p in [c.clone(), c + one(), c + Rational::from_integer(2.into()), cm.clone(), &cm + one(), &cm + Rational::from_integer(2.into())] {
        if is_nonpositive_integer(&p) {
            return Err(Error::PoleParameter(p.to_string()));
        }
    }
    let am = a + mu;
    let a1 = a + one();
    let am1 = &am + one();
    let c1 = c + one();
    let c2 = &c1 + one();
    let cm1 = &cm + one();
    let cm2 = &cm1 + one();

    let lhs = &(&kummer(&am, &cm, order)? * &kummer(&a1, &c1, order)?)
        - &(&kummer(&am1, &cm1, order)? * &kummer(a, c, order)?);

    let first = (&kummer(&a1, &c2, order)? * &kummer(&am1, &cm1, order)?).scale(&(&cm * &cm1));
    let second = (&kummer(&a1, &c1, order)? * &kummer(&am1, &cm2, order)?).scale(&(c * &c1));
    let factor = (c - a) / (c * &c1 * &cm * &cm1);
    let rhs = (&first - &second).scale(&factor).shift(1);
    Ok(&lhs - &rhs)
}

fn check_absum_domain(b: &Rational, mu: &Rational) -> Result<()> {
    if mu.is_negative() {
        return Err(Error::NegativeShift {
            name: "mu",
            value: mu.to_string(),
        });
    }
    if !b.is_positive() {
        return Err(Error::NonPositiveParameter {
            name: "b",
            value: b.to_string(),
        });
    }
    Ok(())
}

/// `u_k = (a)_k (a+μ)_{m-k} / ((b)_k (b+μ)_{m-k})`.
fn absum_term(a: &Rational, b: &Rational, mu: &Rational, m: usize, k: usize) -> Rational {
    let am = a + mu;
    let bm = b + mu;
    rising_factorial(a, k) * rising_factorial(&am, m - k) / (rising_factorial(b, k) * rising_factorial(&bm, m - k))
}

/// `Σ_{k=0}^{m} u_k · C(m,k) · (m - 2k + μ)`, exactly.
pub fn absum_value(a: &Rational, b: &Rational, mu: &Rational, m: usize) -> Result<Rational> {
    check_absum_domain(b, mu)?;
    let mut total = Rational::zero();
    for k in 0..=m {
        let binom = Rational::from_integer(binomial(m as u64, k as i64));
        let weight = Rational::from_integer(BigInt::from(m as i64 - 2 * k as i64)) + mu;
        total += absum_term(a, b, mu, m, k) * binom * weight;
    }
    Ok(total)
}

/// `w / (w)_j` with the common factor cancelled, so `w = 0` is allowed.
fn cancelled(w: &Rational, j: usize) -> Rational {
    if j == 0 {
        w.clone()
    } else {
        one() / rising_factorial(&(w + one()), j - 1)
    }
}

/// `α_k = (b-1)(b-1+μ)(a)_k(a+μ)_{m+1-k} / ((a-b+1)(b-1)_k(b-1+μ)_{m+1-k})`
/// for `k = 0..=m+1`, in cancelled form.
pub fn gosper_alpha(a: &Rational, b: &Rational, mu: &Rational, m: usize, k: usize) -> Result<Rational> {
    check_absum_domain(b, mu)?;
    if k > m + 1 {
        return Err(Error::IndexOutOfRange { index: k, len: m + 2 });
    }
    let gap = a - b + one();
    if gap.is_zero() {
        return Err(Error::Domain("antidifference needs a - b + 1 != 0".into()));
    }
    let b1 = b - one();
    let b1m = &b1 + mu;
    let am = a + mu;
    Ok(cancelled(&b1, k) * cancelled(&b1m, m + 1 - k) * rising_factorial(a, k) * rising_factorial(&am, m + 1 - k) / gap)
}

/// Checks `u_k (m - 2k + μ) = α_{k+1} - α_k` for every `k = 0..=m`.
pub fn check_gosper_antidifference(a: &Rational, b: &Rational, mu: &Rational, m: usize) -> Result<bool> {
    let alphas = (0..=m + 1)
        .map(|k| gosper_alpha(a, b, mu, m, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=m).all(|k| {
        let weight = Rational::from_integer(BigInt::from(m as i64 - 2 * k as i64)) + mu;
        absum_term(a, b, mu, m, k) * weight == &alphas[k + 1] - &alphas[k]
    }))
}

/// Closed form of the linear coefficient of `φ` for the `F` family:
/// `f_0 f_1 μν(c-a)(2c+μ+ν) / (c(c+μ)(c+ν)(c+μ+ν))`.
pub fn phi_coefficient_one(spec: &FamilySpec, mu: &Rational, nu: &Rational) -> Result<Rational> {
    if spec.family != Family::F {
        return Err(Error::FamilyMismatch("linear coefficient formula".into(), spec.family.to_string()));
    }
    let f = spec.sequence.terms(1);
    let c = &spec.c;
    let two_c = c + c;
    let num = &f[0] * &f[1] * mu * nu * (c - &spec.a) * (two_c + mu + nu);
    let den = c * (c + mu) * (c + nu) * (c + mu + nu);
    Ok(num / den)
}
