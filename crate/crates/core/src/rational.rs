//! Exact positive rationals and quadratic-irrational endpoints `√s`.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::isqrt;
use crate::error::{domain, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Non-negative rational `num / den`. Values built with [`Rational::new`] are
/// in lowest terms; equality and ordering compare values, not fields.
#[derive(Debug, Clone, Copy)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(domain("zero denominator"));
        }
        let g = gcd(num, den).max(1);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    /// `num / den` without reduction; `den` must be non-zero.
    pub(crate) const fn unreduced(num: u64, den: u64) -> Self {
        Self { num, den }
    }

    pub fn reduced(&self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Self {
            num: self.num / g,
            den: self.den / g,
        }
    }

    pub const fn integer(n: u64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    pub fn is_integer(&self) -> bool {
        self.num.is_multiple_of(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `1 / self` as a float.
    pub fn recip_f64(&self) -> f64 {
        self.den as f64 / self.num as f64
    }

    /// `self · other == n`, checked without overflow.
    pub fn product_equals(&self, other: &Rational, n: u64) -> bool {
        (self.num as u128) * (other.num as u128)
            == (n as u128) * (self.den as u128) * (other.den as u128)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Self::integer(n)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rational {}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den == 1 {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

/// A point on the positive real line that is either rational or `√s` for a
/// non-square `s`. Enough to place every breakpoint and endpoint exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Exact(Rational),
    Sqrt(u64),
}

impl Point {
    pub fn integer(n: u64) -> Self {
        Point::Exact(Rational::integer(n))
    }

    /// `√s`, normalised to an exact value when `s` is a square.
    pub fn sqrt(s: u64) -> Self {
        let r = isqrt(s);
        if r * r == s {
            Point::integer(r)
        } else {
            Point::Sqrt(s)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Point::Exact(r) => r.to_f64(),
            Point::Sqrt(s) => (s as f64).sqrt(),
        }
    }

    pub fn recip_f64(&self) -> f64 {
        match *self {
            Point::Exact(r) => r.recip_f64(),
            Point::Sqrt(s) => 1.0 / (s as f64).sqrt(),
        }
    }

    /// `⌊p⌋`.
    pub fn floor(&self) -> u64 {
        match *self {
            Point::Exact(r) => r.floor(),
            Point::Sqrt(s) => isqrt(s),
        }
    }

    /// `⌊x / p⌋`.
    pub fn quotient_floor(&self, x: u64) -> u64 {
        match *self {
            Point::Exact(r) => ((x as u128 * r.den as u128) / r.num as u128) as u64,
            // x/√s = √(x²/s) and ⌊√y⌋ = ⌊√⌊y⌋⌋.
            Point::Sqrt(s) => isqrt_u128((x as u128 * x as u128) / s as u128),
        }
    }

    /// Limit of `⌊x / t⌋` as `t` decreases to `p`: `⌈x/p⌉ - 1`.
    pub fn quotient_floor_right(&self, x: u64) -> u64 {
        match *self {
            Point::Exact(r) => {
                let a = x as u128 * r.den as u128;
                let b = r.num as u128;
                (a.div_ceil(b) - 1) as u64
            }
            // x/√s is irrational here
            Point::Sqrt(_) => self.quotient_floor(x),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match *self {
            Point::Exact(r) => Some(r),
            Point::Sqrt(_) => None,
        }
    }
}

fn isqrt_u128(n: u128) -> u64 {
    if n <= u64::MAX as u128 {
        return isqrt(n as u64);
    }
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

impl From<Rational> for Point {
    fn from(r: Rational) -> Self {
        Point::Exact(r)
    }
}

impl From<u64> for Point {
    fn from(n: u64) -> Self {
        Point::integer(n)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Point::Exact(a), Point::Exact(b)) => a.cmp(&b),
            (Point::Sqrt(a), Point::Sqrt(b)) => a.cmp(&b),
            // p/q vs √s  <=>  p² vs s·q²; never equal since s is not a square.
            (Point::Exact(r), Point::Sqrt(s)) => {
                let lhs = (r.num as u128) * (r.num as u128);
                let rhs = (s as u128) * (r.den as u128) * (r.den as u128);
                lhs.cmp(&rhs)
            }
            (Point::Sqrt(_), Point::Exact(_)) => other.cmp(self).reverse(),
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Exact(r) => r.fmt(f),
            Point::Sqrt(s) => write!(f, "sqrt({s})"),
        }
    }
}
