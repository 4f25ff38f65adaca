//! The two closing remarks: the `⌊√(x/n)⌋` sum over `λ` and its square
//! indicator counterpart.

use super::grid::GridSpec;
use super::report::{ClaimId, ClaimOutput, ClaimReport, Scale};
use crate::arith::{iroot4, isqrt, square_indicator, ArithFnTable, ArithKind, Sieve};
use crate::compensated::CompensatedSum;
use crate::dirichlet::conv_with_q;
use crate::error::Result;
use crate::rational::Point;
use crate::stepquad::integrate_pair;

/// Largest admissible `|Σ λ(n)⌊√(x/n)⌋ − √x Σ λ(n)/√n| / √x`.
pub const REMARK1_CONSTANT: f64 = 2.0;

/// `Σ_{n≤√x} λ(n)⌊√(x/n)⌋` and its smooth part `√x Σ_{n≤√x} λ(n)/√n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remark1Terms {
    pub x: u64,
    pub raw: i64,
    pub main: f64,
}

impl Remark1Terms {
    pub fn difference(&self) -> f64 {
        self.raw as f64 - self.main
    }
}

/// `lambda` must cover `[1, √x]`.
pub fn remark1_terms(x: u64, lambda: &ArithFnTable) -> Result<Remark1Terms> {
    let r = isqrt(x);
    lambda.require_prefix(r, "lambda")?;
    let mut raw = 0i64;
    let mut acc = CompensatedSum::new();
    for n in 1..=r {
        let v = lambda.at(n) as i64;
        raw += v * isqrt(x / n) as i64;
        acc.add(v as f64 / (n as f64).sqrt());
    }
    Ok(Remark1Terms {
        x,
        raw,
        main: (x as f64).sqrt() * acc.value(),
    })
}

/// Raw sum, smooth part and their difference, each over `√x`; the difference
/// is asserted within [`REMARK1_CONSTANT`].
pub fn run_remark1_sum(grid: &GridSpec) -> Result<ClaimOutput> {
    let lambda = Sieve::new(ArithKind::Liouville).block(1, isqrt(grid.max()))?;
    let half = Scale::power(0.5);
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let t = remark1_terms(x, &lambda)?;
        out.push(ClaimReport::new(ClaimId::Remark1, x, t.raw as f64, half)?);
        out.push(ClaimReport::new(ClaimId::Remark1Main, x, t.main, half)?);
        let diff = ClaimReport::new(ClaimId::Remark1Diff, x, t.difference(), half)?;
        if diff.scaled.abs() > REMARK1_CONSTANT {
            out.fail(
                ClaimId::Remark1Diff,
                x,
                format!(
                    "raw = {}, main = {}, |difference|/sqrt(x) = {}",
                    t.raw,
                    t.main,
                    diff.scaled.abs()
                ),
            );
        }
        out.push(diff);
    }
    out.add_fit(ClaimId::Remark1);
    Ok(out)
}

/// `(Σ_{n≤√x} s(n)⌊√(x/n)⌋, Σ_{m≤x^{1/4}} ⌊√x/m⌋)`.
pub fn remark2_identity(x: u64) -> (u64, u64) {
    let r = isqrt(x);
    // walk n ≤ √x, tracking the next square instead of testing each n
    let mut lhs = 0;
    let mut next_root = 1u64;
    for n in 1..=r {
        if n == next_root * next_root {
            lhs += isqrt(x / n);
            next_root += 1;
        }
    }
    let rhs = (1..=iroot4(x)).map(|m| r / m).sum();
    (lhs, rhs)
}

/// Checks the identity at every grid point, reports the vanishing integral
/// `∫_1^{√x} s(⌊x/t⌋)⌊√t⌋/t² dt`, and scans `q ∗ s` up to the grid maximum
/// for zeros away from multiples of 4.
pub fn run_remark2(grid: &GridSpec) -> Result<ClaimOutput> {
    let n = grid.max();
    let s = ArithFnTable::from_fn(n, |k| square_indicator(k).expect("k >= 1"))?;
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let (lhs, rhs) = remark2_identity(x);
        if lhs != rhs {
            out.fail(ClaimId::Remark2, x, format!("lhs = {lhs}, rhs = {rhs}"));
        }
        out.push(ClaimReport::new(
            ClaimId::Remark2,
            x,
            lhs as f64,
            Scale::power_log(0.5),
        )?);
        let integral = integrate_pair(
            x,
            &s,
            |t| isqrt(t) as i64,
            Point::integer(1),
            Point::sqrt(x),
        )?;
        out.push(ClaimReport::new(
            ClaimId::Remark2Integral,
            x,
            integral,
            Scale::power_log(-0.5),
        )?);
    }

    let qs = conv_with_q(&s)?;
    drop(s);
    let xs = grid.xs();
    let mut next = 0;
    let mut nonzero = 0u64;
    let mut first_bad = None;
    for (i, &v) in qs.values().iter().enumerate() {
        let k = i as u64 + 1;
        if v != 0 {
            nonzero += 1;
        } else if !k.is_multiple_of(4) && first_bad.is_none() {
            first_bad = Some(k);
        }
        if next < xs.len() && k == xs[next] {
            out.push(ClaimReport::new(
                ClaimId::Remark2Density,
                k,
                nonzero as f64 / k as f64,
                Scale::power(0.0),
            )?);
            next += 1;
        }
    }
    if let Some(k) = first_bad {
        out.fail(
            ClaimId::Remark2Density,
            k,
            format!("(q*s)({k}) = 0 but 4 does not divide {k}"),
        );
    }
    out.add_fit(ClaimId::Remark2Integral);
    Ok(out)
}
