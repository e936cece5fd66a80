//! Exact scalar type for valuation values.
//!
//! Values are arbitrary-precision fractions kept in lowest terms with a
//! positive denominator. Text form is `"p"` or `"p/q"`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"` or `"p/q"` (optionally signed) into lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(Error::parse(format!("{s:?}"), "expected \"p\" or \"p/q\""));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("{s:?}"), "bad numerator"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("{s:?}"), "bad denominator"))?;
    if d.is_zero() {
        return Err(Error::parse(format!("{s:?}"), "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn max_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// Largest `k` with `2^-k >= v`, for `0 < v <= 1`; i.e. `v` rounded down to a
/// power of two is `2^-k`.
pub(crate) fn floor_log2_inverse(v: &Rational) -> u32 {
    debug_assert!(v.is_positive() && *v <= one());
    let mut k = 0u32;
    let mut p = one();
    let half = rat(1, 2);
    while p > *v {
        p *= &half;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(format_rational(&parse_rational("3/6").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1 /2").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn power_of_two_rounding() {
        assert_eq!(floor_log2_inverse(&one()), 0);
        assert_eq!(floor_log2_inverse(&rat(3, 4)), 1);
        assert_eq!(floor_log2_inverse(&rat(1, 2)), 1);
        assert_eq!(floor_log2_inverse(&rat(1, 3)), 2);
    }

    #[test]
    fn arithmetic_is_exact() {
        let x = rat(1, 3) + rat(1, 6);
        assert_eq!(x, rat(1, 2));
        assert!(rat(2, 3) > rat(3, 5));
        assert_eq!(rat(2, 3) * rat(3, 4), rat(1, 2));
    }
}
