//! Partial sums: `L(x) = Σ_{n≤x} λ(n)`, its Möbius analog `M(x)`, `Q(x)`,
//! `H(x) = Σ_{n≤x} (q ∗ a)(n)`, weighted sums `Σ L(n)/n^s`, quotient sums
//! `Σ L(⌊x/n⌋)` and Abel summation.

pub mod checkpoint;
mod sublinear;

pub use sublinear::{
    l_sublinear, m_sublinear, recommended_threshold, SummatoryCache, DEFAULT_MEMO_BUDGET,
};

use crate::arith::{isqrt, q_summatory, ArithFnTable, ArithKind, Sieve};
use crate::compensated::CompensatedSum;
use crate::error::{domain, Error, Result};

/// Sum of `λ` or `μ` over `[1, x]` by streaming the block sieve.
pub fn summatory_sieved(kind: ArithKind, x: u64) -> Result<i64> {
    if x == 0 {
        return Err(domain("summatory function needs x >= 1"));
    }
    let mut total = 0i64;
    Sieve::new(kind).for_each_block(1, x, |b| total += b.sum())?;
    Ok(total)
}

/// `L(x)` by sieving.
pub fn l_sieved(x: u64) -> Result<i64> {
    summatory_sieved(ArithKind::Liouville, x)
}

/// `M(x)` by sieving.
pub fn m_sieved(x: u64) -> Result<i64> {
    summatory_sieved(ArithKind::Mobius, x)
}

/// Calls `f(n, S(n))` for `n = 1..=hi`, where `S` is the running sum of `λ`
/// or `μ`.
pub fn for_each_partial_sum(kind: ArithKind, hi: u64, mut f: impl FnMut(u64, i64)) -> Result<()> {
    let mut acc = 0i64;
    Sieve::new(kind).for_each_block(1, hi, |b| {
        for (n, v) in b.iter() {
            acc += v as i64;
            f(n, acc);
        }
    })
}

/// `Q(x) = Σ_{n≤x} (-1)^(n-1)`: 1 when `⌊x⌋` is odd, else 0.
pub fn q_closed(x: f64) -> Result<i64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(domain(format!("Q(x) needs finite x >= 1, got {x}")));
    }
    Ok(q_summatory(x.floor() as u64))
}

/// `H(x) = Σ_{n≤x} a(n) Q(x/n)`.
pub fn h_of(a: &ArithFnTable, x: u64) -> Result<i64> {
    if x == 0 {
        return Err(domain("H(x) needs x >= 1"));
    }
    a.require_prefix(x, "H(x)")?;
    Ok((1..=x).map(|n| a.at(n) as i64 * q_summatory(x / n)).sum())
}

/// Which `n` a quotient sum `Σ L(⌊x/n⌋)` runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientRange {
    /// `n ≤ √x`
    Lower,
    /// `√x < n ≤ x`
    Upper,
    /// `n ≤ x`
    Full,
}

/// `Σ L(⌊x/n⌋)` over `range`, evaluating `L` once per distinct quotient.
pub fn quotient_sum_l(x: u64, range: QuotientRange, cache: &SummatoryCache) -> Result<i64> {
    if x == 0 {
        return Err(domain("quotient sum needs x >= 1"));
    }
    let r = isqrt(x);
    let (lo, hi) = match range {
        QuotientRange::Lower => (1, r),
        QuotientRange::Upper => (r + 1, x),
        QuotientRange::Full => (1, x),
    };
    grouped_quotient_sum(x, lo, hi, |q| cache.get(q))
}

/// `Σ_{lo ≤ n ≤ hi} S(⌊x/n⌋)` grouping runs of equal quotients.
pub fn grouped_quotient_sum(
    x: u64,
    lo: u64,
    hi: u64,
    mut s: impl FnMut(u64) -> Result<i64>,
) -> Result<i64> {
    let mut total = 0i64;
    let mut n = lo.max(1);
    while n <= hi {
        let q = x / n;
        let n_end = (x / q).min(hi);
        let count = (n_end - n + 1) as i64;
        total = count
            .checked_mul(s(q)?)
            .and_then(|t| total.checked_add(t))
            .ok_or_else(|| Error::Overflow(format!("quotient sum at x = {x}")))?;
        n = n_end + 1;
    }
    Ok(total)
}

/// Abel summation: `Σ_{n≤x} a(n) f(n) = A(x) f(x) − ∫_1^x A(t) f'(t) dt`.
///
/// `A` is constant on each `[n, n+1)`, so the integral is
/// `Σ A(n) (f(min(n+1, x)) − f(n))` and `f` itself serves as the antiderivative
/// of `f'`.
pub fn abel_sum(a_prefix: impl Fn(u64) -> f64, f: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(domain(format!(
            "Abel summation needs finite x >= 1, got {x}"
        )));
    }
    let finite = |v: f64, t: f64| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!("weight is not finite at t = {t}")))
        }
    };
    let top = x.floor() as u64;
    let fx = finite(f(x), x)?;
    let mut integral = CompensatedSum::new();
    let mut f_left = finite(f(1.0), 1.0)?;
    for n in 1..=top {
        let right = ((n + 1) as f64).min(x);
        let f_right = finite(f(right), right)?;
        integral.add(a_prefix(n) * (f_right - f_left));
        f_left = f_right;
    }
    Ok(a_prefix(top) * fx - integral.value())
}

/// `Σ_{n≤x} L(n)/n^s` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSum {
    pub exponent: f64,
    pub x: u64,
    pub value: f64,
}

/// `Σ_{n≤x} L(n)/n^s` with compensated summation.
pub fn weighted_partial(s_exp: f64, x: u64) -> Result<WeightedSum> {
    let values = weighted_partials_at(s_exp, &[x])?;
    Ok(values[0])
}

/// `Σ_{n≤x} L(n)/n^s` at each of the increasing points `xs`, in one sieve pass.
pub fn weighted_partials_at(s_exp: f64, xs: &[u64]) -> Result<Vec<WeightedSum>> {
    if !(s_exp > 0.0) || !s_exp.is_finite() {
        return Err(domain(format!(
            "weight exponent must be positive, got {s_exp}"
        )));
    }
    check_increasing(xs)?;
    let Some(&last) = xs.last() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = CompensatedSum::new();
    let mut next = 0usize;
    for_each_partial_sum(ArithKind::Liouville, last, |n, l| {
        acc.add(l as f64 / (n as f64).powf(s_exp));
        if n == xs[next] {
            out.push(WeightedSum {
                exponent: s_exp,
                x: n,
                value: acc.value(),
            });
            next += 1;
        }
    })?;
    Ok(out)
}

fn check_increasing(xs: &[u64]) -> Result<()> {
    if xs.first() == Some(&0) {
        return Err(domain("points must be >= 1"));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("points must be strictly increasing"));
    }
    Ok(())
}

/// Truncated tail `Σ_{x<n≤X} L(n)/n²` with a truncation estimate for the
/// part beyond `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub x: u64,
    pub x_max: u64,
    pub value: f64,
    /// `2C/√X` with `C = max_{n≤X} |L(n)|/√n`. Valid only if `|L(n)| ≤ C√n`
    /// persists past `X`, hence not rigorous.
    pub truncation_bound: f64,
    pub rigorous: bool,
}

/// `Σ_{x<n≤X} L(n)/n²`.
pub fn tail_l_over_n2(x: u64, x_max: u64) -> Result<TailEstimate> {
    Ok(tails_l_over_n2(&[x], x_max)?[0])
}

/// Tails for several increasing `x < X` in one sieve pass. Each tail is
/// accumulated from the per-segment sums so no large partial sums cancel.
pub fn tails_l_over_n2(xs: &[u64], x_max: u64) -> Result<Vec<TailEstimate>> {
    check_increasing(xs)?;
    if let Some(&last) = xs.last() {
        if x_max <= last {
            return Err(domain(format!(
                "tail needs X_max > x (X_max = {x_max}, x = {last})"
            )));
        }
    }
    // segment j covers (xs[j], xs[j+1]], the last one (xs[k-1], x_max]
    let mut segments = vec![CompensatedSum::new(); xs.len()];
    let mut c_max = 0f64;
    let mut seg = None::<usize>;
    for_each_partial_sum(ArithKind::Liouville, x_max, |n, l| {
        let nf = n as f64;
        c_max = c_max.max((l.abs() as f64) / nf.sqrt());
        if let Some(j) = seg {
            segments[j].add(l as f64 / (nf * nf));
        }
        // n reaching xs[j] opens segment j for the following terms
        let next = seg.map_or(0, |j| j + 1);
        if next < xs.len() && n == xs[next] {
            seg = Some(next);
        }
    })?;
    let bound = 2.0 * c_max / (x_max as f64).sqrt();
    let mut out = Vec::with_capacity(xs.len());
    let mut running = CompensatedSum::new();
    for (j, s) in segments.iter().enumerate().rev() {
        running.add(s.value());
        out.push(TailEstimate {
            x: xs[j],
            x_max,
            value: running.value(),
            truncation_bound: bound,
            rigorous: false,
        });
    }
    out.reverse();
    Ok(out)
}
