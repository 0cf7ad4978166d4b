//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Values serialize as `"num/den"`, with `/den` omitted
//! when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical string form: `"num/den"`, or just `"num"` when den = 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num/den"` or `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational {
        text: text.to_string(),
    };
    let s = text.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num_s.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den_s.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// n! as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Rising factorial (a)_k = a(a+1)···(a+k−1), with (a)_0 = 1.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Binomial coefficient C(n, k) for machine-sized arguments.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    pochhammer(&rat_int((n - k) as i64 + 1), k) / factorial(k)
}

/// Ceiling of a nonnegative rational as u64, or an error when out of range.
pub fn ceil_to_u64(r: &Rational) -> Result<u64> {
    use num_traits::ToPrimitive;
    let c = r.ceil();
    let int = c.to_integer();
    if int.is_negative() {
        return Ok(0);
    }
    int.to_u64().ok_or(Error::RootBoundTooLarge {
        bound: int.to_string(),
    })
}
