//! Exact rational time values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(Ratio<i128>);

impl Rat {
    /// `n/d`. Panics when `d` is zero.
    pub fn new(n: i128, d: i128) -> Rat {
        Rat(Ratio::new(n, d))
    }

    pub fn try_new(n: i128, d: i128) -> Result<Rat> {
        if d == 0 {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Rat::new(n, d))
    }

    pub fn int(n: i64) -> Rat {
        Rat(Ratio::from_integer(n as i128))
    }

    pub fn zero() -> Rat {
        Rat::int(0)
    }

    pub fn one() -> Rat {
        Rat::int(1)
    }

    pub fn numer(self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(self) -> i128 {
        -(-self).floor()
    }

    /// The integer value, when there is one that fits in `i64`.
    pub fn to_i64(self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.numer()).ok()
        } else {
            None
        }
    }

    /// `floor(self / step)`; `step` must be positive.
    pub fn div_floor(self, step: Rat) -> i128 {
        debug_assert!(step.is_positive());
        (self / step).floor()
    }

    /// `self - floor(self / step) * step`, a value in `[0, step)`.
    pub fn rem_euclid(self, step: Rat) -> Rat {
        self - step * Rat::from(self.div_floor(step))
    }

    pub fn midpoint(self, other: Rat) -> Rat {
        (self + other) / Rat::int(2)
    }

    /// Least common multiple of two positive rationals: the least positive
    /// number that is an integer multiple of both.
    pub fn lcm(self, other: Rat) -> Rat {
        assert!(self.is_positive() && other.is_positive(), "lcm of non-positive rationals");
        let n = self.numer().lcm(&other.numer());
        let d = self.denom().gcd(&other.denom());
        Rat::new(n, d)
    }

    /// Greatest common divisor of two positive rationals: the greatest number
    /// of which both are integer multiples.
    pub fn gcd(self, other: Rat) -> Rat {
        assert!(self.is_positive() && other.is_positive(), "gcd of non-positive rationals");
        let n = self.numer().gcd(&other.numer());
        let d = self.denom().lcm(&other.denom());
        Rat::new(n, d)
    }

    /// Whether `self` is a positive integer multiple of `step`.
    pub fn is_multiple_of(self, step: Rat) -> bool {
        self.is_positive() && step.is_positive() && (self / step).is_integer()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::int(n as i64)
    }
}

impl From<i128> for Rat {
    fn from(n: i128) -> Rat {
        Rat(Ratio::from_integer(n))
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        Rat(self.0 + o.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        Rat(self.0 - o.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        Rat(self.0 * o.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    /// Panics on division by zero.
    fn div(self, o: Rat) -> Rat {
        Rat(self.0 / o.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, o: Rat) {
        self.0 += o.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, o: Rat) {
        self.0 -= o.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i128> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("{whole:?}"), "expected a rational literal"));
    }
    s.parse::<i128>()
        .map_err(|_| Error::parse(format!("{whole:?}"), "number out of range"))
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts integers, fractions `p/q` and decimals such as `-2.25`.
    fn from_str(text: &str) -> Result<Rat> {
        let s = text.trim();
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let value = if let Some((n, d)) = body.split_once('/') {
            let d = parse_int(d, text)?;
            if d == 0 {
                return Err(Error::parse(format!("{text:?}"), "zero denominator"));
            }
            Rat::new(parse_int(n, text)?, d)
        } else if let Some((i, frac)) = body.split_once('.') {
            let ip = if i.is_empty() { 0 } else { parse_int(i, text)? };
            let fp = parse_int(frac, text)?;
            if frac.len() > 30 {
                return Err(Error::parse(format!("{text:?}"), "too many decimal digits"));
            }
            let scale = 10i128.pow(frac.len() as u32);
            Rat::new(ip * scale + fp, scale)
        } else {
            Rat::from(parse_int(body, text)?)
        };
        Ok(if neg { -value } else { value })
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
