//! The unconditional integral `∫_1^{√x} h(⌊x/t⌋) L(t)/t² dt` with `h = q ∗ a`,
//! its Möbius analogue, and the exact decompositions behind it.

use std::fmt;
use std::path::Path;

use super::grid::GridSpec;
use super::report::{ClaimId, ClaimOutput, ClaimReport, Scale};
use crate::arith::{isqrt, square_indicator, ArithFnTable, ArithKind, Sieve};
use crate::dirichlet::{conv_with_q, convolve_prefix, lambda_conv_q_table, ConvInput, ConvTable};
use crate::error::{domain, Error, Result};
use crate::rational::Point;
use crate::stepquad::{integrate_pair, ArithFn};
use crate::summatory::SummatoryCache;

/// `A(x)/√x` above this at any grid point violates `A(x) = O(√x)`.
pub const HYPOTHESIS_RATIO_CAP: f64 = 4.0;
/// ... as does a ratio more than this factor above the first grid point's.
pub const HYPOTHESIS_GROWTH_FACTOR: f64 = 2.0;
/// Allowed growth of `x^{1/4}·|integral|` over the two smallest grid points.
pub const BOUNDEDNESS_FACTOR: f64 = 10.0;
/// Largest `x` for which the decomposition is checked inside a grid run.
pub const DECOMPOSITION_LIMIT: u64 = 10_000;

/// The coefficient sequence `a` in `h = q ∗ a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ASpec {
    /// `s(n)`: 1 on perfect squares
    Square,
    /// `e(n)`: 1 at `n = 1` only
    UnitAtOne,
    /// 1 on powers of two, including `2^0`
    PowersOfTwo,
    /// 1 everywhere; violates `A(x) = O(√x)`
    AllOnes,
    /// Explicit values; indices past the table are 0.
    Custom { name: String, table: ArithFnTable },
}

impl ASpec {
    pub const BUILTIN: [&'static str; 4] = ["square", "unit-at-1", "powers-of-2", "all-ones"];

    /// Built-in spec by name.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "square" => Ok(ASpec::Square),
            "unit-at-1" => Ok(ASpec::UnitAtOne),
            "powers-of-2" => Ok(ASpec::PowersOfTwo),
            "all-ones" => Ok(ASpec::AllOnes),
            _ => Err(domain(format!(
                "unknown a spec {name:?}; expected one of {:?} or a CSV path",
                Self::BUILTIN
            ))),
        }
    }

    /// Two-column `n,value` CSV. A header line and `#` comments are skipped.
    pub fn from_csv(name: &str, text: &str, path: &Path) -> Result<Self> {
        let bad = |reason: String| Error::Format {
            path: path.to_path_buf(),
            reason,
        };
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((n, v)) = line.split_once(',') else {
                return Err(bad(format!("line {}: expected n,value", i + 1)));
            };
            let (n, v) = (n.trim(), v.trim());
            let (Ok(n), Ok(v)) = (n.parse::<u64>(), v.parse::<i64>()) else {
                if i == 0 {
                    continue;
                }
                return Err(bad(format!("line {}: not integers", i + 1)));
            };
            if n == 0 {
                return Err(bad(format!("line {}: n must be >= 1", i + 1)));
            }
            if v.abs() > 1 {
                return Err(Error::Hypothesis(format!(
                    "|a(n)| <= 1 fails: a({n}) = {v} in {}",
                    path.display()
                )));
            }
            entries.push((n, v as i8));
        }
        let hi = entries.iter().map(|&(n, _)| n).max().unwrap_or(1);
        let mut values = vec![0i8; hi as usize];
        for (n, v) in entries {
            values[(n - 1) as usize] = v;
        }
        Ok(ASpec::Custom {
            name: name.to_string(),
            table: ArithFnTable::new(1, values)?,
        })
    }

    pub fn name(&self) -> String {
        match self {
            ASpec::Square => "square".into(),
            ASpec::UnitAtOne => "unit-at-1".into(),
            ASpec::PowersOfTwo => "powers-of-2".into(),
            ASpec::AllOnes => "all-ones".into(),
            ASpec::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    /// `a(1..=n)`.
    pub fn table(&self, n: u64) -> Result<ArithFnTable> {
        match self {
            ASpec::Square => ArithFnTable::from_fn(n, |k| square_indicator(k).expect("k >= 1")),
            ASpec::UnitAtOne => ArithFnTable::from_fn(n, |k| (k == 1) as i8),
            ASpec::PowersOfTwo => ArithFnTable::from_fn(n, |k| k.is_power_of_two() as i8),
            ASpec::AllOnes => ArithFnTable::from_fn(n, |_| 1),
            ASpec::Custom { table, .. } => ArithFnTable::from_fn(n, |k| table.get(k).unwrap_or(0)),
        }
    }
}

impl fmt::Display for ASpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Checks `|a| ≤ 1` and `A(x)/√x` at the grid points: each ratio at most
/// [`HYPOTHESIS_RATIO_CAP`] and at most [`HYPOTHESIS_GROWTH_FACTOR`] times
/// `max(1, first ratio)`.
pub fn check_hypothesis(a: &ArithFnTable, xs: &[u64]) -> Result<()> {
    if let Some((n, v)) = a.iter().find(|&(_, v)| v.abs() > 1) {
        return Err(Error::Hypothesis(format!(
            "|a(n)| <= 1 fails: a({n}) = {v}"
        )));
    }
    a.require_prefix(xs.last().copied().unwrap_or(1), "A(x)")?;
    let sums = a.running_sums();
    let ratios: Vec<f64> = xs
        .iter()
        .map(|&x| sums[(x - 1) as usize].abs() as f64 / (x as f64).sqrt())
        .collect();
    let Some(&first) = ratios.first() else {
        return Ok(());
    };
    let growth_cap = HYPOTHESIS_GROWTH_FACTOR * first.max(1.0);
    for (&x, &r) in xs.iter().zip(&ratios) {
        if r > HYPOTHESIS_RATIO_CAP || r > growth_cap {
            return Err(Error::Hypothesis(format!(
                "A(x) = O(sqrt x) fails: |A({x})|/sqrt({x}) = {r:.3}"
            )));
        }
    }
    Ok(())
}

/// `h = q ∗ a` over `[1, n]` after the hypothesis check.
pub fn build_h(a: &ASpec, n: u64, xs: &[u64]) -> Result<ConvTable> {
    let table = a.table(n)?;
    check_hypothesis(&table, xs)?;
    conv_with_q(&table)
}

/// `∫_1^{√x} h(⌊x/t⌋) S(t)/t² dt` with `S` read from a dense prefix table.
pub fn pair_integral<H: ArithFn + ?Sized>(x: u64, h: &H, s: &[i64]) -> Result<f64> {
    if (s.len() as u64) <= isqrt(x) {
        return Err(domain(format!("summatory table too short for x = {x}")));
    }
    integrate_pair(x, h, |n| s[n as usize], Point::integer(1), Point::sqrt(x))
}

/// Flags grid points whose `|scaled|` exceeds [`BOUNDEDNESS_FACTOR`] times
/// the larger of the first two.
fn check_bounded(out: &mut ClaimOutput, claim: ClaimId) {
    let scaled: Vec<(u64, f64)> = out.series(claim).map(|r| (r.x, r.scaled.abs())).collect();
    let reference = scaled.iter().take(2).map(|&(_, v)| v).fold(0.0, f64::max);
    for (x, v) in scaled {
        if v > BOUNDEDNESS_FACTOR * reference {
            out.fail(
                claim,
                x,
                format!("|scaled| = {v} exceeds {BOUNDEDNESS_FACTOR} x {reference}"),
            );
        }
    }
}

/// Integral and the intermediate `Σ_{n≤√x} h(n) L(⌊x/n⌋)` over the grid, the
/// boundedness check, `h_x` growth, and the exact decomposition for
/// `x ≤ min(max, 10^4)`.
pub fn run_theorem2(a: &ASpec, grid: &GridSpec) -> Result<ClaimOutput> {
    let n = grid.max();
    let h = build_h(a, n, grid.xs())?;
    let cache = SummatoryCache::for_target(ArithKind::Liouville, n)?;
    let l = cache.dense_table();
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let raw = pair_integral(x, &h, l)?;
        out.push(ClaimReport::new(
            ClaimId::Thm2,
            x,
            raw,
            Scale::power(-0.25),
        )?);

        let mut partial = 0i64;
        for k in 1..=isqrt(x) {
            let hk = h.get(k);
            if hk != 0 {
                partial += hk * cache.get(x / k)?;
            }
        }
        out.push(ClaimReport::new(
            ClaimId::Thm2Partial,
            x,
            partial as f64,
            Scale::power(0.75),
        )?);

        let hm = run_h_max(x, &h)?;
        out.push(ClaimReport::new(
            ClaimId::HMax,
            x,
            hm.value as f64,
            Scale::power(grid.epsilon),
        )?);
    }
    check_bounded(&mut out, ClaimId::Thm2);

    if let Some(d) = check_decomposition(a, n.min(DECOMPOSITION_LIMIT))? {
        out.fail(
            ClaimId::Thm2,
            d.x,
            format!(
                "decomposition mismatch: direct = {}, single sum = {}, three-term = {}",
                d.direct, d.single, d.three_term
            ),
        );
    }
    for c in [ClaimId::Thm2, ClaimId::Thm2Partial, ClaimId::HMax] {
        out.add_fit(c);
    }
    Ok(out)
}

/// Same integral with `M` in place of `L`.
pub fn run_mobius_variant(a: &ASpec, grid: &GridSpec) -> Result<ClaimOutput> {
    let n = grid.max();
    let h = build_h(a, n, grid.xs())?;
    let cache = SummatoryCache::for_target(ArithKind::Mobius, n)?;
    let mut out = ClaimOutput::default();
    for &x in grid.xs() {
        let raw = pair_integral(x, &h, cache.dense_table())?;
        out.push(ClaimReport::new(
            ClaimId::Mobius,
            x,
            raw,
            Scale::power(-0.25),
        )?);
    }
    out.add_fit(ClaimId::Mobius);
    Ok(out)
}

/// `h_x = max |h(n)|` over `√x < n ≤ x` and the first `n` attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HMax {
    pub x: u64,
    /// `None` when the interval is empty (`x = 1`).
    pub n: Option<u64>,
    pub value: u64,
}

pub fn run_h_max<H: ArithFn + ?Sized>(x: u64, h: &H) -> Result<HMax> {
    if x == 0 {
        return Err(domain("h_x needs x >= 1"));
    }
    if h.coverage() < x {
        return Err(domain(format!(
            "h covers [1, {}], need [1, {x}]",
            h.coverage()
        )));
    }
    // n > √x  <=>  n² > x  <=>  n > isqrt(x)
    let mut best = HMax {
        x,
        n: None,
        value: 0,
    };
    for n in isqrt(x) + 1..=x {
        let v = h.value(n).unsigned_abs();
        if best.n.is_none() || v > best.value {
            best.n = Some(n);
            best.value = v;
        }
    }
    Ok(best)
}

/// The three values that must agree at one `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub x: u64,
    /// `Σ_{n≤x} ((λ∗q)∗a)(n)` from a full convolution
    pub direct: i64,
    /// `Σ_{n≤x} (λ∗q)(n) A(⌊x/n⌋)`
    pub single: i64,
    /// `Σ_{n≤r} λ(n)H(⌊x/n⌋) + Σ_{n≤r} h(n)L(⌊x/n⌋) − L(r)H(r)`, `r = ⌊√x⌋`
    pub three_term: i64,
}

impl Decomposition {
    pub fn agrees(&self) -> bool {
        self.direct == self.single && self.single == self.three_term
    }
}

/// All three forms for every `x ≤ x_max`.
pub fn decompositions(a: &ASpec, x_max: u64) -> Result<Vec<Decomposition>> {
    let at = a.table(x_max)?;
    let lq = lambda_conv_q_table(x_max)?;
    let direct = convolve_prefix(&ConvInput::new(&lq, &at)?)?.prefix_sums();
    let a_sum: Vec<i64> = std::iter::once(0).chain(at.running_sums()).collect();
    let h = conv_with_q(&at)?;
    let h_sum = h.prefix_sums();
    let lam = Sieve::new(ArithKind::Liouville).block(1, x_max)?;
    let l_sum: Vec<i64> = std::iter::once(0).chain(lam.running_sums()).collect();

    let mut out = Vec::with_capacity(x_max as usize);
    for x in 1..=x_max {
        let single: i64 = (1..=x)
            .map(|n| lq.at(n) as i64 * a_sum[(x / n) as usize])
            .sum();
        let r = isqrt(x);
        let mut three = -l_sum[r as usize] * h_sum[r as usize];
        for n in 1..=r {
            let q = (x / n) as usize;
            three += lam.at(n) as i64 * h_sum[q] + h.get(n) * l_sum[q];
        }
        out.push(Decomposition {
            x,
            direct: direct[x as usize],
            single,
            three_term: three,
        });
    }
    Ok(out)
}

/// First `x ≤ x_max` where the three forms disagree.
pub fn check_decomposition(a: &ASpec, x_max: u64) -> Result<Option<Decomposition>> {
    Ok(decompositions(a, x_max)?.into_iter().find(|d| !d.agrees()))
}
