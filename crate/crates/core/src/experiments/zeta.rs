use crate::arith::{ArithKind, Sieve};
use crate::compensated::CompensatedSum;
use crate::error::{domain, Result};
use crate::rational::Point;
use crate::stepquad::integrate_l_over_power;

/// Smallest integration limit accepted by [`run_zeta_check`].
pub const MIN_ZETA_LIMIT: u64 = 1000;

const CORRECTION_TOLERANCE: f64 = 1e-12;

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin summation.
///
/// The head `Σ_{n<N} n^{-s}` is followed by `N^{1-s}/(s-1) + N^{-s}/2` and the
/// Bernoulli corrections through `B_6`. `N` doubles until the first omitted
/// (`B_8`) term drops below `1e-12`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!("zeta needs real s > 1, got {s}")));
    }
    let rising = |k: u32| (0..k).map(|j| s + j as f64).product::<f64>();
    let mut n = 16u64;
    while rising(7) / 1_209_600.0 * (n as f64).powf(-s - 7.0) >= CORRECTION_TOLERANCE {
        n *= 2;
    }
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    for k in (1..n).rev() {
        acc.add((k as f64).powf(-s));
    }
    acc.add(nf.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * nf.powf(-s));
    acc.add(s / 12.0 * nf.powf(-s - 1.0));
    acc.add(-rising(3) / 720.0 * nf.powf(-s - 3.0));
    acc.add(rising(5) / 30_240.0 * nf.powf(-s - 5.0));
    Ok(acc.value())
}

/// Both sides of `ζ(2s)/ζ(s) = s ∫_1^∞ L(t) t^{-s-1} dt`, the integral cut at
/// `x_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaCheck {
    pub s: f64,
    pub x_max: u64,
    pub lhs: f64,
    pub rhs: f64,
    /// `s ∫_X^∞ t · t^{-s-1} dt` doubled, from `|L(t)| ≤ t`.
    pub tail_bound: f64,
}

impl ZetaCheck {
    pub fn difference(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn passed(&self) -> bool {
        self.difference() <= self.tail_bound + 1e-9
    }
}

pub fn run_zeta_check(s: f64, x_max: u64) -> Result<ZetaCheck> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!("zeta check needs s > 1, got {s}")));
    }
    if x_max < MIN_ZETA_LIMIT {
        return Err(domain(format!(
            "integration limit must be >= {MIN_ZETA_LIMIT}, got {x_max}"
        )));
    }
    let lhs = zeta_real(2.0 * s)? / zeta_real(s)?;
    let l = Sieve::new(ArithKind::Liouville).prefix_sums(x_max)?;
    let rhs = s * integrate_l_over_power(Point::integer(x_max), s, |n| l[n as usize])?;
    let tail_bound = 2.0 * s / ((s - 1.0) * (x_max as f64).powf(s - 1.0));
    Ok(ZetaCheck {
        s,
        x_max,
        lhs,
        rhs,
        tail_bound,
    })
}
