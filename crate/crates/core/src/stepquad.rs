//! Exact integration of step-function integrands.
//!
//! Integrands here are products of `L(⌊t⌋)`, `h(⌊x/t⌋)` and `L(⌊x/t⌋)` with a
//! power of `t`. Between consecutive points where `⌊t⌋` or `⌊x/t⌋` changes the
//! step factors are constant, so each piece is its value times a closed-form
//! antiderivative. Breakpoints stay exact until that final evaluation.

use crate::arith::ArithFnTable;
use crate::compensated::CompensatedSum;
use crate::dirichlet::ConvTable;
use crate::error::{domain, Result};
use crate::rational::{Point, Rational};

/// Integer-valued arithmetic function with a finite coverage `[1, N]`.
pub trait ArithFn {
    fn value(&self, n: u64) -> i64;
    /// Largest `N` such that every `n ∈ [1, N]` is defined.
    fn coverage(&self) -> u64;
}

impl ArithFn for ArithFnTable {
    #[inline]
    fn value(&self, n: u64) -> i64 {
        self.at(n) as i64
    }

    fn coverage(&self) -> u64 {
        if self.lo() == 1 {
            self.hi()
        } else {
            0
        }
    }
}

impl ArithFn for ConvTable {
    #[inline]
    fn value(&self, n: u64) -> i64 {
        self.get(n)
    }

    fn coverage(&self) -> u64 {
        self.len()
    }
}

/// A step function: `values[i]` on `(breakpoints[i], breakpoints[i + 1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstant {
    breakpoints: Vec<Point>,
    values: Vec<i64>,
}

impl PiecewiseConstant {
    pub fn new(breakpoints: Vec<Point>, values: Vec<i64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(domain("step function needs at least two breakpoints"));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(domain(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("breakpoints must be strictly increasing"));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `∫ f(t) w(t) dt` where `antiderivative` is an antiderivative of the
    /// weight `w`.
    pub fn integrate_with(&self, antiderivative: impl Fn(&Point) -> f64) -> f64 {
        let mut acc = CompensatedSum::new();
        let mut left = antiderivative(&self.breakpoints[0]);
        for (i, &v) in self.values.iter().enumerate() {
            let right = antiderivative(&self.breakpoints[i + 1]);
            if v != 0 {
                acc.add(v as f64 * (right - left));
            }
            left = right;
        }
        acc.value()
    }
}

/// One open interval between consecutive breakpoints, with the constant
/// values of `⌊t⌋` and `⌊x/t⌋` on it when those breakpoints were enumerated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub left: Point,
    pub right: Point,
    pub floor_t: Option<u64>,
    pub floor_q: Option<u64>,
}

/// Which families of breakpoints to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Breaks {
    /// integers, where `⌊t⌋` changes
    pub integers: bool,
    /// `x/k`, where `⌊x/t⌋` changes
    pub quotients: bool,
}

impl Breaks {
    pub const BOTH: Breaks = Breaks {
        integers: true,
        quotients: true,
    };
    pub const INTEGERS: Breaks = Breaks {
        integers: true,
        quotients: false,
    };
    pub const QUOTIENTS: Breaks = Breaks {
        integers: false,
        quotients: true,
    };
}

/// Streams the pieces of `[lo, hi]` cut at the enabled breakpoints.
#[derive(Debug, Clone)]
pub struct Pieces {
    x: u64,
    pos: Point,
    hi: Point,
    /// smallest integer strictly above `pos`
    next_int: Option<u64>,
    /// largest `k` with `x/k > pos`; `Some(0)` once `pos ≥ x`
    next_k: Option<u64>,
}

/// Pieces of `[lo, hi]` for quotient parameter `x`.
pub fn pieces(x: u64, lo: Point, hi: Point, breaks: Breaks) -> Result<Pieces> {
    if x == 0 {
        return Err(domain("x must be >= 1"));
    }
    if lo >= hi {
        return Err(domain(format!("empty interval [{lo}, {hi}]")));
    }
    if lo < Point::integer(1) {
        return Err(domain(format!("interval must start at t >= 1, got {lo}")));
    }
    Ok(Pieces {
        x,
        pos: lo,
        hi,
        next_int: breaks.integers.then(|| lo.floor() + 1),
        next_k: breaks.quotients.then(|| lo.quotient_floor_right(x)),
    })
}

impl Iterator for Pieces {
    type Item = Piece;

    fn next(&mut self) -> Option<Piece> {
        if self.pos >= self.hi {
            return None;
        }
        let int_pt = self.next_int.map(Point::integer);
        let quo_pt = match self.next_k {
            Some(k) if k > 0 => Some(Point::Exact(Rational::unreduced(self.x, k))),
            _ => None,
        };
        let (mut right, mut take_int, mut take_quo) = match (int_pt, quo_pt) {
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (a, true, false),
                std::cmp::Ordering::Greater => (b, false, true),
                std::cmp::Ordering::Equal => (a, true, true),
            },
            (Some(a), None) => (a, true, false),
            (None, Some(b)) => (b, false, true),
            (None, None) => (self.hi, false, false),
        };
        if right >= self.hi {
            right = self.hi;
            take_int &= int_pt == Some(self.hi);
            take_quo &= quo_pt == Some(self.hi);
        }
        let piece = Piece {
            left: self.pos,
            right,
            floor_t: self.next_int.map(|n| n - 1),
            floor_q: self.next_k,
        };
        if take_int {
            self.next_int = self.next_int.map(|n| n + 1);
        }
        if take_quo {
            self.next_k = self.next_k.map(|k| k - 1);
        }
        self.pos = right;
        Some(piece)
    }
}

/// Sorted union of `{lo, hi}`, the integers in `[lo, hi]` and the points
/// `x/k` in `[lo, hi]`.
pub fn breakpoints_quotient(x: u64, lo: Rational, hi: Rational) -> Result<Vec<Rational>> {
    if lo >= hi {
        return Err(domain(format!("empty interval [{lo}, {hi}]")));
    }
    if hi > Rational::integer(x) {
        return Err(domain(format!("interval end {hi} exceeds x = {x}")));
    }
    let mut out = vec![lo.reduced()];
    for piece in pieces(x, lo.into(), hi.into(), Breaks::BOTH)? {
        out.push(
            piece
                .right
                .as_rational()
                .expect("rational endpoints")
                .reduced(),
        );
    }
    Ok(out)
}

fn check_upper(upper: Point) -> Result<()> {
    if upper < Point::integer(1) {
        return Err(domain(format!("upper limit must be >= 1, got {upper}")));
    }
    Ok(())
}

/// `∫_1^upper L(t) / t^(s+1) dt` with `L` constant on each `[n, n+1)`.
pub fn integrate_l_over_power(upper: Point, s_exp: f64, l: impl Fn(u64) -> i64) -> Result<f64> {
    check_upper(upper)?;
    if !(s_exp > 0.0) || !s_exp.is_finite() {
        return Err(domain(format!("exponent must be positive, got {s_exp}")));
    }
    if upper == Point::integer(1) {
        return Ok(0.0);
    }
    // antiderivative of t^(-s-1) is -t^(-s)/s
    let neg_pow = |p: &Point| -> f64 {
        if s_exp == 1.0 {
            p.recip_f64()
        } else {
            p.to_f64().powf(-s_exp)
        }
    };
    let mut acc = CompensatedSum::new();
    for piece in pieces(1, Point::integer(1), upper, Breaks::INTEGERS)? {
        let lv = l(piece.floor_t.expect("integer breaks"));
        if lv != 0 {
            acc.add(lv as f64 * (neg_pow(&piece.left) - neg_pow(&piece.right)));
        }
    }
    Ok(acc.value() / s_exp)
}

/// `∫_{t_lo}^{t_hi} h(⌊x/t⌋) L(⌊t⌋) / t² dt`.
pub fn integrate_pair<H: ArithFn + ?Sized>(
    x: u64,
    h: &H,
    l: impl Fn(u64) -> i64,
    t_lo: Point,
    t_hi: Point,
) -> Result<f64> {
    if t_hi > Point::sqrt(x) {
        return Err(domain(format!("upper limit {t_hi} exceeds sqrt({x})")));
    }
    let pieces = pieces(x, t_lo, t_hi, Breaks::BOTH)?;
    let needed = t_lo.quotient_floor(x);
    if h.coverage() < needed {
        return Err(domain(format!(
            "h covers [1, {}], integrand needs [1, {needed}]",
            h.coverage()
        )));
    }
    let mut acc = CompensatedSum::new();
    for piece in pieces {
        let q = piece.floor_q.expect("quotient breaks");
        let hv = h.value(q);
        if hv == 0 {
            continue;
        }
        let lv = l(piece.floor_t.expect("integer breaks"));
        if lv == 0 {
            continue;
        }
        acc.add((hv * lv) as f64 * (piece.left.recip_f64() - piece.right.recip_f64()));
    }
    Ok(acc.value())
}

/// `∫_{t_lo}^{t_hi} L(⌊x/t⌋) dt`, with `L(0) = 0`.
pub fn integrate_l_quotient_form(
    x: u64,
    t_lo: Point,
    t_hi: Point,
    l: impl Fn(u64) -> i64,
) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for piece in pieces(x, t_lo, t_hi, Breaks::QUOTIENTS)? {
        let q = piece.floor_q.expect("quotient breaks");
        if q == 0 {
            break;
        }
        let lv = l(q);
        if lv != 0 {
            acc.add(lv as f64 * (piece.right.to_f64() - piece.left.to_f64()));
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{liouville, ArithKind, Sieve};

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn l_table(n: u64) -> Vec<i64> {
        Sieve::new(ArithKind::Liouville).prefix_sums(n).unwrap()
    }

    #[test]
    fn breakpoint_examples() {
        let bp = breakpoints_quotient(4, r(1, 1), r(2, 1)).unwrap();
        assert_eq!(bp, vec![r(1, 1), r(4, 3), r(2, 1)]);
        assert!(breakpoints_quotient(1, r(1, 1), r(1, 1)).is_err());
        let bp = breakpoints_quotient(9, r(1, 1), r(3, 1)).unwrap();
        let expected = vec![
            r(1, 1),
            r(9, 8),
            r(9, 7),
            r(9, 6),
            r(9, 5),
            r(2, 1),
            r(9, 4),
            r(3, 1),
        ];
        assert_eq!(bp, expected);
        let text: Vec<String> = bp.iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["1", "9/8", "9/7", "3/2", "9/5", "2", "9/4", "3"]);
    }

    #[test]
    fn breakpoints_with_fractional_ends() {
        let bp = breakpoints_quotient(10, r(5, 4), r(7, 2)).unwrap();
        let mut brute = vec![r(5, 4), r(7, 2)];
        for n in 1..=10u64 {
            brute.push(r(n, 1));
            brute.push(r(10, n));
        }
        brute.retain(|p| *p >= r(5, 4) && *p <= r(7, 2));
        brute.sort();
        brute.dedup();
        assert_eq!(bp, brute);
    }

    #[test]
    fn pieces_track_floors() {
        let x = 37u64;
        let lo = Point::from(r(7, 5));
        let hi = Point::sqrt(x);
        for piece in pieces(x, lo, hi, Breaks::BOTH).unwrap() {
            let mid = 0.5 * (piece.left.to_f64() + piece.right.to_f64());
            assert_eq!(piece.floor_t, Some(mid.floor() as u64));
            assert_eq!(piece.floor_q, Some((x as f64 / mid).floor() as u64));
        }
    }

    #[test]
    fn piecewise_constant_validation() {
        let bp = vec![Point::integer(1), Point::integer(2), Point::integer(3)];
        assert!(PiecewiseConstant::new(bp.clone(), vec![1]).is_err());
        assert!(
            PiecewiseConstant::new(vec![Point::integer(2), Point::integer(1)], vec![1]).is_err()
        );
        let pc = PiecewiseConstant::new(bp, vec![2, -1]).unwrap();
        // ∫ f(t) dt = 2·1 + (−1)·1
        assert_eq!(pc.integrate_with(|p| p.to_f64()), 1.0);
    }

    #[test]
    fn power_examples() {
        let l = l_table(100);
        let lf = |n: u64| l[n as usize];
        let v = integrate_l_over_power(Point::integer(2), 1.0, lf).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(
            integrate_l_over_power(Point::integer(1), 1.0, lf).unwrap(),
            0.0
        );
        let v = integrate_l_over_power(Point::integer(4), 1.0, lf).unwrap();
        assert!((v - 5.0 / 12.0).abs() < 1e-15, "{v}");
        assert!(integrate_l_over_power(Point::integer(4), 0.0, lf).is_err());
        // general exponent against a hand sum
        let s = 0.7;
        let v = integrate_l_over_power(Point::from(r(19, 2)), s, lf).unwrap();
        let mut expect = 0.0;
        for n in 1..=9u64 {
            let right = if n == 9 { 9.5f64 } else { (n + 1) as f64 };
            expect += l[n as usize] as f64 * ((n as f64).powf(-s) - right.powf(-s)) / s;
        }
        assert!((v - expect).abs() < 1e-14);
    }

    #[test]
    fn pair_with_ones_reduces_to_power() {
        let l = l_table(100);
        let lf = |n: u64| l[n as usize];
        let ones = ArithFnTable::from_fn(4, |_| 1).unwrap();
        let v = integrate_pair(4, &ones, lf, Point::integer(1), Point::integer(2)).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let short = ArithFnTable::from_fn(3, |_| 1).unwrap();
        assert!(integrate_pair(4, &short, lf, Point::integer(1), Point::integer(2)).is_err());
        assert!(integrate_pair(4, &ones, lf, Point::integer(1), Point::integer(3)).is_err());
    }

    #[test]
    fn quotient_form_examples() {
        let l = l_table(1000);
        let lf = |n: u64| if n == 0 { 0 } else { l[n as usize] };
        let v = integrate_l_quotient_form(4, Point::integer(2), Point::integer(4), lf).unwrap();
        let rhs = 4.0 * integrate_l_over_power(Point::integer(2), 1.0, lf).unwrap();
        assert!((v - 2.0).abs() < 1e-14 && (v - rhs).abs() < 1e-14);
        assert!(integrate_l_quotient_form(1, Point::integer(1), Point::integer(1), lf).is_err());
        let v =
            integrate_l_quotient_form(100, Point::integer(10), Point::integer(100), lf).unwrap();
        let rhs = 100.0 * integrate_l_over_power(Point::integer(10), 1.0, lf).unwrap();
        assert!((v - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        // past t = x the integrand vanishes
        let a =
            integrate_l_quotient_form(100, Point::integer(10), Point::integer(100), lf).unwrap();
        let b =
            integrate_l_quotient_form(100, Point::integer(10), Point::integer(101), lf).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn change_of_variables() {
        let l = l_table(1000);
        let lf = |n: u64| if n == 0 { 0 } else { l[n as usize] };
        for x in [
            5u64, 17, 99, 100, 1000, 12_345, 77_777, 500_000, 999_999, 1_000_000,
        ] {
            let root = Point::sqrt(x);
            let lhs = integrate_l_quotient_form(x, root, Point::integer(x), lf).unwrap();
            let rhs = x as f64 * integrate_l_over_power(root, 1.0, lf).unwrap();
            let tol = 1e-10 * lhs.abs().max(rhs.abs()).max(1.0);
            assert!((lhs - rhs).abs() <= tol, "x = {x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn piece_additivity() {
        let l = l_table(100);
        let lf = |n: u64| l[n as usize];
        let h = ArithFnTable::from_fn(100, |n| liouville(n).unwrap()).unwrap();
        let a = Point::integer(1);
        let b = Point::from(r(100, 11));
        let c = Point::integer(10);
        let whole = integrate_pair(100, &h, lf, a, c).unwrap();
        let parts =
            integrate_pair(100, &h, lf, a, b).unwrap() + integrate_pair(100, &h, lf, b, c).unwrap();
        assert!((whole - parts).abs() < 1e-15);
    }
}
