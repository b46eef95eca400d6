//! Arbitrary-precision rationals. `Rational` is kept in reduced form with a
//! positive denominator by the backing crate; parsing and printing use the
//! plain `p/q` form used in every file format here.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / rat(2)
}

/// Parses `p`, `-p`, or `p/q`. Whitespace around the string is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    s.parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

/// Canonical `p/q` text; integers print without the denominator.
pub fn rational_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    // Good enough for the denominators seen here; exact code paths never
    // round-trip through this.
    let n = x.numer();
    let d = x.denom();
    let fn_ = n.to_string().parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let fd = d.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    fn_ / fd
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "-1", "3/4", "-7/2", "10"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(rational_string(&x), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(rational_string(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(rational_string(&parse_rational("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn midpoint_is_interior() {
        let a = rat(0);
        let b = ratio(1, 2);
        let m = midpoint(&a, &b);
        assert!(a < m && m < b);
        assert_eq!(m, ratio(1, 4));
    }
}
