//! Exact scalars: half-integers stored doubled, and rationals.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::rational::Ratio;
use num::One;

/// Exact rational used for ν-coordinates and intertwining scalars.
pub type Q = Ratio<i64>;

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_doubled(d: i64) -> Self {
        HalfInt(d)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// True for values in ℤ + ½.
    pub const fn is_strict_half(self) -> bool {
        self.0 % 2 != 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn signum(self) -> i64 {
        self.0.signum()
    }

    pub fn to_q(self) -> Q {
        Q::new(self.0, 2)
    }

    /// `None` unless `q` lies in ½ℤ.
    pub fn from_q(q: Q) -> Option<Self> {
        let d = q * Q::from_integer(2);
        d.is_integer().then(|| HalfInt(d.to_integer()))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q = parse_q(s)?;
        HalfInt::from_q(q).ok_or_else(|| ScalarParseError(format!("{s} is not a half-integer")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse scalar: {0}")]
pub struct ScalarParseError(pub String);

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q, ScalarParseError> {
    let t = s.trim();
    let bad = || ScalarParseError(t.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Q::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let ip: i64 = if int.is_empty() || int == "-" || int == "+" {
            0
        } else {
            int.parse::<i64>().map_err(|_| bad())?.abs()
        };
        let den = 10i64.pow(frac.len() as u32);
        let fp: i64 = frac.parse().map_err(|_| bad())?;
        let v = Q::new(ip * den + fp, den);
        return Ok(if neg { -v } else { v });
    }
    t.parse::<i64>().map(Q::from_integer).map_err(|_| bad())
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn half() -> Q {
    Q::new(1, 2)
}

/// Representative of `v` modulo 2 in the interval (−1, 1].
pub fn residue_class(v: Q) -> Q {
    let two = Q::from_integer(2);
    let mut r = v - two * (v / two).floor();
    if r > Q::one() {
        r -= two;
    }
    r
}
