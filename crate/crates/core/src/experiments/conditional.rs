//! Runners for the statements around hypothesis `(m)`. Apart from the
//! mechanical residual of the upper-range sum, nothing here asserts: the
//! outputs are scaled reports and exponent fits.

use super::grid::GridSpec;
use super::report::{ClaimId, ClaimOutput, ClaimReport, Scale};
use crate::arith::{isqrt, ArithKind, Sieve};
use crate::error::Result;
use crate::rational::Point;
use crate::stepquad::{integrate_l_over_power, integrate_l_quotient_form};
use crate::summatory::{
    grouped_quotient_sum, quotient_sum_l, tails_l_over_n2, weighted_partials_at, QuotientRange,
    SummatoryCache,
};

/// Largest admissible `|Σ_{√x<n≤x} L(⌊x/n⌋) − ∫_{√x}^x L(x/t) dt| / √x`.
pub const LEMMA_B_CONSTANT: f64 = 4.0;

/// `L(0..=isqrt(max))`, enough for every quotient below `√x`.
fn l_up_to_sqrt(grid: &GridSpec) -> Result<Vec<i64>> {
    Sieve::new(ArithKind::Liouville).prefix_sums(isqrt(grid.max()))
}

/// `Σ_{n≤√x} L(⌊x/n⌋)` scaled by `x^{3/4}`.
pub fn run_claim_m(grid: &GridSpec) -> Result<ClaimOutput> {
    let cache = SummatoryCache::for_target(ArithKind::Liouville, grid.max())?;
    run_claim_m_with(grid, &cache)
}

/// [`run_claim_m`] reusing a caller's cache, e.g. one seeded from a
/// checkpoint.
pub fn run_claim_m_with(grid: &GridSpec, cache: &SummatoryCache) -> Result<ClaimOutput> {
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let raw = quotient_sum_l(x, QuotientRange::Lower, cache)?;
        out.push(ClaimReport::new(
            ClaimId::M,
            x,
            raw as f64,
            Scale::power(0.75),
        )?);
    }
    out.add_fit(ClaimId::M);
    Ok(out)
}

/// `∫_1^{√x} L(t)/t² dt` times `x^{1/4}`.
pub fn run_claim_en1(grid: &GridSpec) -> Result<ClaimOutput> {
    let l = l_up_to_sqrt(grid)?;
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let raw = integrate_l_over_power(Point::sqrt(x), 1.0, |n| l[n as usize])?;
        out.push(ClaimReport::new(ClaimId::En1, x, raw, Scale::power(-0.25))?);
    }
    out.add_fit(ClaimId::En1);
    Ok(out)
}

/// `Σ_{√x<n≤x} L(⌊x/n⌋)` scaled by `x^{3/4}`.
pub fn run_lemma_a(grid: &GridSpec) -> Result<ClaimOutput> {
    let l = l_up_to_sqrt(grid)?;
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let raw = grouped_quotient_sum(x, isqrt(x) + 1, x, |q| Ok(l[q as usize]))?;
        out.push(ClaimReport::new(
            ClaimId::LemmaA,
            x,
            raw as f64,
            Scale::power(0.75),
        )?);
    }
    out.add_fit(ClaimId::LemmaA);
    Ok(out)
}

/// Both terms of the upper-range residual at one `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperResidual {
    pub x: u64,
    pub sum: i64,
    pub integral: f64,
}

impl UpperResidual {
    pub fn residual(&self) -> f64 {
        (self.sum as f64 - self.integral).abs()
    }

    pub fn scaled(&self) -> f64 {
        self.residual() / (self.x as f64).sqrt()
    }
}

/// Sum and integral over `(√x, x]`; `l` must cover `[0, √x]`.
pub fn upper_residual(x: u64, l: &[i64]) -> Result<UpperResidual> {
    let sum = grouped_quotient_sum(x, isqrt(x) + 1, x, |q| Ok(l[q as usize]))?;
    let integral =
        integrate_l_quotient_form(x, Point::sqrt(x), Point::integer(x), |q| l[q as usize])?;
    Ok(UpperResidual { x, sum, integral })
}

/// Residual scaled by `√x`, asserted at most [`LEMMA_B_CONSTANT`].
pub fn run_lemma_b_residual(grid: &GridSpec) -> Result<ClaimOutput> {
    let l = l_up_to_sqrt(grid)?;
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let r = upper_residual(x, &l)?;
        let report = ClaimReport::new(ClaimId::LemmaB, x, r.residual(), Scale::power(0.5))?;
        if report.scaled > LEMMA_B_CONSTANT {
            out.fail(
                ClaimId::LemmaB,
                x,
                format!(
                    "sum = {}, integral = {}, residual/sqrt(x) = {} > {LEMMA_B_CONSTANT}",
                    r.sum, r.integral, report.scaled
                ),
            );
        }
        out.push(report);
    }
    Ok(out)
}

/// `Σ_{x<n≤X} L(n)/n²` times `√x`, `X` being the largest grid point. That
/// point itself has an empty tail and is left out.
pub fn run_lemma_c(grid: &GridSpec) -> Result<ClaimOutput> {
    let x_max = grid.max();
    let xs: Vec<u64> = grid.xs().iter().copied().filter(|&x| x < x_max).collect();
    let mut out = ClaimOutput::default();
    for t in tails_l_over_n2(&xs, x_max)? {
        out.push(ClaimReport::new(
            ClaimId::LemmaC,
            t.x,
            t.value,
            Scale::power(-0.5),
        )?);
    }
    out.add_fit(ClaimId::LemmaC);
    Ok(out)
}

/// `Σ_{n≤x} L(n)/n^{3/2}` divided by `ln x`.
pub fn run_lemma_d(grid: &GridSpec) -> Result<ClaimOutput> {
    let mut out = ClaimOutput::default();
    for w in weighted_partials_at(1.5, grid.xs())? {
        out.push(ClaimReport::new(
            ClaimId::LemmaD,
            w.x,
            w.value,
            Scale::power_log(0.0),
        )?);
    }
    out.add_fit(ClaimId::LemmaD);
    Ok(out)
}
