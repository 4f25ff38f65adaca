//! Dirichlet convolution `(f ∗ g)(n) = Σ_{d|n} f(d) g(n/d)`, the hyperbola
//! method for its partial sums, and the closed form of `λ ∗ q`.

use crate::arith::{isqrt, ArithFnTable};
use crate::error::{domain, Error, Result};
use crate::rational::Rational;

/// Largest magnitude accepted in convolution inputs.
pub const MAX_INPUT_MAGNITUDE: i8 = 2;

/// A pair of tables over the same range `[1, N]`.
#[derive(Debug, Clone, Copy)]
pub struct ConvInput<'a> {
    f: &'a ArithFnTable,
    g: &'a ArithFnTable,
}

impl<'a> ConvInput<'a> {
    pub fn new(f: &'a ArithFnTable, g: &'a ArithFnTable) -> Result<Self> {
        if f.lo() != 1 || g.lo() != 1 {
            return Err(domain("convolution tables must start at n = 1"));
        }
        if f.len() != g.len() {
            return Err(domain(format!(
                "convolution tables differ in length ({} vs {})",
                f.len(),
                g.len()
            )));
        }
        for t in [f, g] {
            if let Some((n, v)) = t.iter().find(|&(_, v)| v.abs() > MAX_INPUT_MAGNITUDE) {
                return Err(domain(format!(
                    "convolution input {v} at n = {n} exceeds magnitude {MAX_INPUT_MAGNITUDE}"
                )));
            }
        }
        Ok(Self { f, g })
    }

    pub fn len(&self) -> u64 {
        self.f.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

/// Values `c(1..=N)` of a convolution. Entries are stored in 32 bits; every
/// accumulation is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvTable {
    values: Vec<i32>,
}

impl ConvTable {
    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `c(n)` for `1 ≤ n ≤ N`.
    #[inline]
    pub fn get(&self, n: u64) -> i64 {
        self.values[(n - 1) as usize] as i64
    }

    pub fn try_get(&self, n: u64) -> Option<i64> {
        if n == 0 {
            return None;
        }
        self.values.get((n - 1) as usize).map(|&v| v as i64)
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// `Σ_{k≤n} c(k)` for `n = 0..=N`.
    pub fn prefix_sums(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.values.len() + 1);
        let mut acc = 0i64;
        out.push(0);
        for &v in &self.values {
            acc += v as i64;
            out.push(acc);
        }
        out
    }

    /// Narrows to an [`ArithFnTable`] when every value fits in `i8`.
    pub fn to_arith_table(&self) -> Result<ArithFnTable> {
        let vals = self
            .values
            .iter()
            .map(|&v| {
                i8::try_from(v).map_err(|_| Error::Overflow(format!("{v} does not fit in i8")))
            })
            .collect::<Result<Vec<_>>>()?;
        ArithFnTable::new(1, vals)
    }
}

fn overflow(n: u64) -> Error {
    Error::Overflow(format!("convolution accumulator at n = {n}"))
}

/// Full table of `f ∗ g` on `[1, N]` by walking multiples of each `d` with
/// `f(d) ≠ 0`.
pub fn convolve_prefix(input: &ConvInput<'_>) -> Result<ConvTable> {
    let n = input.len();
    let g = input.g.values();
    let mut acc = vec![0i32; n as usize];
    for (d, fd) in input.f.iter() {
        if fd == 0 {
            continue;
        }
        let fd = fd as i32;
        let mut idx = d;
        let mut m = 0usize;
        while idx <= n {
            let slot = &mut acc[(idx - 1) as usize];
            *slot = slot
                .checked_add(fd * g[m] as i32)
                .ok_or_else(|| overflow(idx))?;
            idx += d;
            m += 1;
        }
    }
    Ok(ConvTable { values: acc })
}

/// `(f ∗ g)(n)` by enumerating divisors up to `√n`.
pub fn convolve_at(f: impl Fn(u64) -> i64, g: impl Fn(u64) -> i64, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(domain("convolution is defined for n >= 1"));
    }
    let mut total = 0i64;
    let r = isqrt(n);
    for d in 1..=r {
        if !n.is_multiple_of(d) {
            continue;
        }
        let e = n / d;
        let mut term = f(d).checked_mul(g(e)).ok_or_else(|| overflow(n))?;
        if d != e {
            term = term
                .checked_add(f(e).checked_mul(g(d)).ok_or_else(|| overflow(n))?)
                .ok_or_else(|| overflow(n))?;
        }
        total = total.checked_add(term).ok_or_else(|| overflow(n))?;
    }
    Ok(total)
}

/// `Σ_{n≤x} (f ∗ g)(n)` by the hyperbola method split at `a · b = x`:
///
/// `Σ_{n≤a} f(n) G(x/n) + Σ_{n≤b} g(n) F(x/n) − F(a) G(b)`.
///
/// Summatory oracles receive `⌊t⌋` for a real argument `t`.
pub fn hyperbola_sum<F, FS, G, GS>(
    f: F,
    f_sum: FS,
    g: G,
    g_sum: GS,
    x: u64,
    a: Rational,
    b: Rational,
) -> Result<i64>
where
    F: Fn(u64) -> i64,
    FS: Fn(u64) -> i64,
    G: Fn(u64) -> i64,
    GS: Fn(u64) -> i64,
{
    if x == 0 {
        return Err(domain("hyperbola sum needs x >= 1"));
    }
    if a.num() == 0 || b.num() == 0 {
        return Err(Error::Contract("split points must be positive".into()));
    }
    if !a.product_equals(&b, x) {
        return Err(Error::Contract(format!("a·b = {a}·{b} is not x = {x}")));
    }
    let ovf = || Error::Overflow(format!("hyperbola sum at x = {x}"));
    let mut total = 0i64;
    for n in 1..=a.floor() {
        let t = f(n).checked_mul(g_sum(x / n)).ok_or_else(ovf)?;
        total = total.checked_add(t).ok_or_else(ovf)?;
    }
    for n in 1..=b.floor() {
        let t = g(n).checked_mul(f_sum(x / n)).ok_or_else(ovf)?;
        total = total.checked_add(t).ok_or_else(ovf)?;
    }
    let corr = f_sum(a.floor())
        .checked_mul(g_sum(b.floor()))
        .ok_or_else(ovf)?;
    total.checked_sub(corr).ok_or_else(ovf)
}

/// Closed form of `(λ ∗ q)(n)`. Writing `n = 2^k w` with `w` odd: `s(n)` for
/// `k = 0`; otherwise 0 unless `w` is a square, then `-2` for odd `k` and `1`
/// for even `k ≥ 2`.
pub fn lambda_conv_q_closed(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(domain("(lambda * q) is undefined at n = 0"));
    }
    let k = n.trailing_zeros();
    let w = n >> k;
    let r = isqrt(w);
    if r * r != w {
        return Ok(0);
    }
    Ok(match k {
        0 => 1,
        k if k % 2 == 1 => -2,
        _ => 1,
    })
}

/// `(λ ∗ q)(1..=n)` from the closed form.
pub fn lambda_conv_q_table(n: u64) -> Result<ArithFnTable> {
    ArithFnTable::from_fn(n, |k| lambda_conv_q_closed(k).expect("k >= 1"))
}

/// `h = q ∗ a` on `[1, N]`; requires `|a(n)| ≤ 1`.
pub fn conv_with_q(a: &ArithFnTable) -> Result<ConvTable> {
    if a.lo() != 1 {
        return Err(domain("conv_with_q needs a table starting at n = 1"));
    }
    if let Some((n, v)) = a.iter().find(|&(_, v)| v.abs() > 1) {
        return Err(Error::Hypothesis(format!(
            "|a(n)| <= 1 fails: a({n}) = {v}"
        )));
    }
    let n = a.hi();
    let mut acc = vec![0i32; n as usize];
    for (d, ad) in a.iter() {
        if ad == 0 {
            continue;
        }
        let ad = ad as i32;
        // q(m) = +1 for odd m, -1 for even m
        let mut idx = d;
        let mut odd = true;
        while idx <= n {
            let slot = &mut acc[(idx - 1) as usize];
            let term = if odd { ad } else { -ad };
            *slot = slot.checked_add(term).ok_or_else(|| overflow(idx))?;
            idx += d;
            odd = !odd;
        }
    }
    Ok(ConvTable { values: acc })
}
