use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (GMP canonicalizes after every operation).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(rug::Rational);

impl Rational {
    pub fn zero() -> Self {
        Rational(rug::Rational::new())
    }

    pub fn one() -> Self {
        Rational::from(1)
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Self {
        let den = den.into();
        assert!(den != 0, "zero denominator");
        Rational(rug::Rational::from((num.into(), den)))
    }

    pub fn from_integer(i: Integer) -> Self {
        Rational(rug::Rational::from(i))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.clone().abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.clone().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let n = self.numer().clone().pow(e);
        let d = self.denom().clone().pow(e);
        Rational(rug::Rational::from((n, d)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        rug::Rational::from_f64(x).map(Rational)
    }

    pub fn floor(&self) -> Integer {
        self.0.clone().floor().into_numer_denom().0
    }

    pub fn ceil(&self) -> Integer {
        self.0.clone().ceil().into_numer_denom().0
    }

    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        let mut m = a.clone() + b;
        m.0 /= 2u32;
        m
    }

    /// Multiply by 2^k (k may be negative).
    pub fn mul_pow2(&self, k: i32) -> Rational {
        let mut r = self.0.clone();
        if k >= 0 {
            r <<= k as u32;
        } else {
            r >>= (-k) as u32;
        }
        Rational(r)
    }

    /// The rational with the smallest denominator in the closed interval
    /// `[lo, hi]` (continued-fraction descent).
    pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if lo.signum() <= 0 && hi.signum() >= 0 {
            return Rational::zero();
        }
        if hi.is_negative() {
            return -Rational::simplest_between(&-hi.clone(), &-lo.clone());
        }
        let fl = lo.floor();
        if Rational::from_integer(fl.clone()) == *lo {
            return lo.clone();
        }
        let cl = lo.ceil();
        if Rational::from_integer(cl.clone()) <= *hi {
            return Rational::from_integer(cl);
        }
        // lo and hi share the integer part; recurse on the reciprocals of the
        // fractional parts.
        let base = Rational::from_integer(fl);
        let lo_frac = lo.clone() - &base;
        let hi_frac = hi.clone() - &base;
        let inner = Rational::simplest_between(&hi_frac.recip(), &lo_frac.recip());
        base + inner.recip()
    }

    /// Decimal rendering with `digits` digits after the point (truncated
    /// toward negative infinity).
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = Integer::from(10).pow(digits);
        let scaled = (self.0.clone() * &scale).floor();
        let n = scaled.into_numer_denom().0;
        let neg = n < 0;
        let mut s = n.abs().to_string();
        if digits > 0 {
            while s.len() <= digits as usize {
                s.insert(0, '0');
            }
            s.insert(s.len() - digits as usize, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(rug::Rational::from(v))
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational(rug::Rational::from(v))
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational::from_integer(v)
    }
}

impl From<(i64, i64)> for Rational {
    fn from((n, d): (i64, i64)) -> Self {
        Rational::new(n, d)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q`, decimals such as `-0.05` and scientific forms
    /// such as `1e-8`; all are parsed exactly.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: Rational = n.parse()?;
            let d: Rational = d.parse()?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(n / d);
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let n = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
            .map_err(|_| bad())?;
        let scale = exp - frac_part.len() as i32;
        let ten = Integer::from(10);
        let mut r = if scale >= 0 {
            Rational::from_integer(n * ten.pow(scale as u32))
        } else {
            Rational::new(n, ten.pow((-scale) as u32))
        };
        if neg {
            r = -r;
        }
        Ok(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $asg:ident, $am:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(mut self, rhs: Rational) -> Rational {
                self.0.$am(rhs.0);
                self
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(mut self, rhs: &Rational) -> Rational {
                self.0.$am(&rhs.0);
                self
            }
        }
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(rug::Rational::from((&self.0).$m(&rhs.0)))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(rug::Rational::from((&self.0).$m(&rhs.0)))
            }
        }
        impl $asg<&Rational> for Rational {
            fn $am(&mut self, rhs: &Rational) {
                self.0.$am(&rhs.0);
            }
        }
        impl $asg<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                self.0.$am(rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(mut self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.0 /= rhs.0;
        self
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(mut self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.0 /= &rhs.0;
        self
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.clone() / rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(rug::Rational::from(-&self.0))
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(q("0.05"), Rational::new(1, 20));
        assert_eq!(q("3.6"), Rational::new(18, 5));
        assert_eq!(q("-2.4"), Rational::new(-12, 5));
        assert_eq!(q("1e-8"), Rational::new(1, 100_000_000));
        assert_eq!(q("19/1024"), Rational::new(19, 1024));
        assert_eq!(q("3.303"), Rational::new(3303, 1000));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &0);
    }

    #[test]
    fn simplest_between_picks_small_denominators() {
        assert_eq!(Rational::simplest_between(&q("3.3"), &q("3.31")), q("3.3"));
        assert_eq!(Rational::simplest_between(&q("0.32"), &q("0.34")), q("1/3"));
        assert_eq!(
            Rational::simplest_between(&q("-0.34"), &q("-0.32")),
            q("-1/3")
        );
        assert_eq!(
            Rational::simplest_between(&q("1.41"), &q("1.42")),
            q("17/12")
        );
        let lo = q("3.3029531");
        let hi = q("3.3029532");
        let s = Rational::simplest_between(&lo, &hi);
        assert!(lo <= s && s <= hi);
        assert!(s.denom() < &Integer::from(100_000));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q("1/3").to_decimal(4), "0.3333");
        assert_eq!(q("-1/8").to_decimal(2), "-0.13");
        assert_eq!(q("2").to_decimal(0), "2");
        assert_eq!(q("12.5").to_decimal(3), "12.500");
    }
}
