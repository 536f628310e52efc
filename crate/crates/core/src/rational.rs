//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, with a positive
//! denominator, so structural equality is numeric equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn render(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"n"`, `"-n"` or `"n/d"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Input(format!("not an exact rational: `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators (zero for an all-zero input).
pub fn numerator_gcd<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if &(fl.clone() + Rational::one()) <= hi {
        return fl + Rational::one();
    }
    // both ends lie strictly inside (fl, fl + 1)
    let inner = simplest_between(
        &(hi - &fl).recip(),
        &(lo - &fl).recip(),
    );
    fl + inner.recip()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(render(&frac(6, -4)), "-3/2");
        assert_eq!(render(&int(5)), "5");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(1, 2)), frac(1, 2));
        assert_eq!(simplest_between(&frac(3, 10), &frac(4, 10)), frac(1, 3));
        assert_eq!(simplest_between(&frac(-7, 5), &frac(-6, 5)), frac(-4, 3));
        assert_eq!(simplest_between(&frac(2, 1), &frac(5, 2)), int(2));
    }
}
