//! Exact unit-circle values. A `Turn` is a fraction of a full revolution,
//! kept reduced in `[0, 1)`; multiplying circle values is adding turns, so
//! every cocycle operation in this crate stays exact. Conversion to a
//! floating complex number happens only at evaluation boundaries.

use crate::error::{Error, Result};
use num::complex::Complex64;
use num::integer::gcd;
use std::fmt;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    num: i64,
    den: i64,
}

impl Turn {
    pub const ZERO: Turn = Turn { num: 0, den: 1 };
    pub const HALF: Turn = Turn { num: 1, den: 2 };
    pub const QUARTER: Turn = Turn { num: 1, den: 4 };

    /// `num/den` of a revolution, reduced into `[0, 1)`.
    pub fn new(num: i64, den: i64) -> Turn {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num as i128, den as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        n = n.rem_euclid(d);
        let g = gcd(n, d);
        Turn {
            num: (n / g) as i64,
            den: (d / g) as i64,
        }
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    /// Group product of the underlying circle values.
    #[must_use]
    pub fn mul(self, other: Turn) -> Turn {
        let d = self.den as i128 * other.den as i128;
        let n = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        let n = n.rem_euclid(d);
        let g = gcd(n, d);
        Turn {
            num: (n / g) as i64,
            den: (d / g) as i64,
        }
    }

    /// Complex conjugate, i.e. the group inverse.
    #[must_use]
    pub fn conj(self) -> Turn {
        if self.num == 0 {
            self
        } else {
            Turn {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => {
                let theta = 2.0 * std::f64::consts::PI * (self.num as f64) / (self.den as f64);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    /// Parses the `p/q` (or integer) turn literal used in cocycle files.
    pub fn parse(s: &str) -> Result<Turn> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => {
                let n: i64 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad turn numerator `{a}`")))?;
                let d: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad turn denominator `{b}`")))?;
                if d == 0 {
                    return Err(Error::Parse(format!("zero denominator in turn `{s}`")));
                }
                (n, d)
            }
            None => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad turn `{s}`")))?;
                (n, 1)
            }
        };
        Ok(Turn::new(n, d))
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_wrapping() {
        assert_eq!(Turn::new(5, 4), Turn::QUARTER);
        assert_eq!(Turn::new(-1, 4), Turn::new(3, 4));
        assert_eq!(Turn::new(2, 4), Turn::HALF);
        assert_eq!(Turn::new(7, 7), Turn::ZERO);
        assert_eq!(Turn::new(3, -4), Turn::QUARTER);
    }

    #[test]
    fn group_laws() {
        let vals = [
            Turn::ZERO,
            Turn::HALF,
            Turn::QUARTER,
            Turn::new(1, 3),
            Turn::new(5, 12),
        ];
        for a in vals {
            assert_eq!(a.mul(a.conj()), Turn::ZERO);
            assert_eq!(a.mul(Turn::ZERO), a);
            for b in vals {
                assert_eq!(a.mul(b), b.mul(a));
                for c in vals {
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn exact_axis_values() {
        assert_eq!(Turn::ZERO.to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(Turn::HALF.to_complex(), Complex64::new(-1.0, 0.0));
        assert_eq!(Turn::QUARTER.to_complex(), Complex64::new(0.0, 1.0));
        assert_eq!(Turn::new(3, 4).to_complex(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn unit_modulus_within_float_error() {
        for k in 0..24 {
            let z = Turn::new(k, 24).to_complex();
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Turn::parse("1/4").unwrap(), Turn::QUARTER);
        assert_eq!(Turn::parse("0").unwrap(), Turn::ZERO);
        assert_eq!(Turn::parse("-1/4").unwrap(), Turn::new(3, 4));
        assert!(Turn::parse("1/0").is_err());
        assert!(Turn::parse("x").is_err());
    }
}
