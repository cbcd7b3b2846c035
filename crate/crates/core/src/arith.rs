//! Exact scalars and closed rational intervals.
//!
//! Everything that ends up in a certificate is computed here without rounding.
//! Interval endpoints are rationals, so interval arithmetic is exact at the
//! endpoints and only loses sharpness through the usual dependency effect.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Scalar = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.45"` into an exact rational.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if ip.is_empty() && fp.is_empty() {
            return Err(bad());
        }
        let digits = format!("{ip}{fp}");
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn fmt_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Largest multiple of `2^-bits` that is `<= x`.
pub fn floor_dyadic(x: &Scalar, bits: u32) -> Scalar {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    (x * &scale).floor() / scale
}

/// Smallest multiple of `2^-bits` that is `>= x`.
pub fn ceil_dyadic(x: &Scalar, bits: u32) -> Scalar {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    (x * &scale).ceil() / scale
}

pub fn min_s<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_s<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a >= b {
        a
    } else {
        b
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Scalar,
    hi: Scalar,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("interval with lo {lo} > hi {hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Scalar) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Scalar {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: min_s(&self.lo, &other.lo).clone(),
            hi: max_s(&self.hi, &other.hi).clone(),
        }
    }

    /// Pointwise minimum of two quantities, enclosed.
    pub fn min(&self, other: &Interval) -> Interval {
        Interval {
            lo: min_s(&self.lo, &other.lo).clone(),
            hi: min_s(&self.hi, &other.hi).clone(),
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: max_s(&self.lo, &other.lo).clone(),
            hi: max_s(&self.hi, &other.hi).clone(),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= Scalar::zero() && self.hi >= Scalar::zero()
    }

    /// Enclosure of `self / rhs`. A divisor interval containing zero is an error.
    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZeroInterval(format!("{rhs:?}")));
        }
        let inv = Interval {
            lo: rhs.hi.recip(),
            hi: rhs.lo.recip(),
        };
        Ok(self * &inv)
    }

    pub fn scale(&self, k: &Scalar) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn pow(&self, n: u32) -> Interval {
        let mut acc = Interval::point(Scalar::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Three-way comparison that only answers when the intervals are separated.
    ///
    /// `Some(Less)` means every point of `self` is strictly below every point of
    /// `other`; `Some(Equal)` is returned only for two identical point intervals.
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl From<Scalar> for Interval {
    fn from(x: Scalar) -> Self {
        Interval::point(x)
    }
}

impl From<&Scalar> for Interval {
    fn from(x: &Scalar) -> Self {
        Interval::point(x.clone())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        // Nonnegative operands are the common case (scales, coordinates in [0,1]).
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return Interval {
                lo: &self.lo * &rhs.lo,
                hi: &self.hi * &rhs.hi,
            };
        }
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_decimals_and_integers() {
        assert_eq!(parse_scalar("2/5").unwrap(), q(2, 5));
        assert_eq!(parse_scalar("0.4").unwrap(), q(2, 5));
        assert_eq!(parse_scalar(".9").unwrap(), q(9, 10));
        assert_eq!(parse_scalar("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar(" 6/8 ").unwrap(), q(3, 4));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar(".").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(fmt_scalar(&q(6, 8)), "3/4");
        assert_eq!(fmt_scalar(&int(1)), "1");
        assert_eq!(fmt_scalar(&q(-1, 3)), "-1/3");
    }

    #[test]
    fn interval_ops_enclose() {
        let a = Interval::new(q(-1, 2), q(1, 3)).unwrap();
        let b = Interval::new(q(2, 5), q(9, 10)).unwrap();
        let p = &a * &b;
        assert_eq!(p.lo(), &q(-9, 20));
        assert_eq!(p.hi(), &q(3, 10));
        let d = (&a - &b).div(&b).unwrap();
        // (a-b)/b over the corners
        assert!(d.contains(&((q(-1, 2) - q(2, 5)) / q(2, 5))));
        assert!(a.div(&a).is_err());
        assert!(Interval::new(int(1), int(0)).is_err());
    }

    #[test]
    fn certain_cmp_requires_separation() {
        let a = Interval::new(q(1, 4), q(1, 2)).unwrap();
        let b = Interval::new(q(1, 2), int(1)).unwrap();
        let c = Interval::new(q(3, 5), int(1)).unwrap();
        assert_eq!(a.certain_cmp(&b), None);
        assert_eq!(a.certain_cmp(&c), Some(Ordering::Less));
        assert_eq!(c.certain_cmp(&a), Some(Ordering::Greater));
        assert_eq!(
            Interval::point(q(1, 2)).certain_cmp(&Interval::point(q(1, 2))),
            Some(Ordering::Equal)
        );
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = q(1, 3);
        let lo = floor_dyadic(&x, 10);
        let hi = ceil_dyadic(&x, 10);
        assert!(lo < x && x < hi);
        assert_eq!(&hi - &lo, q(1, 1024));
    }
}
