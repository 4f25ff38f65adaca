//! Sublinear evaluation of `L(x)` and `M(x)`.
//!
//! Both satisfy an identity over the quotients `⌊x/n⌋`:
//! `Σ_{n≤x} L(⌊x/n⌋) = ⌊√x⌋` and `Σ_{n≤x} M(⌊x/n⌋) = 1`. Solving for the
//! `n = 1` term and grouping equal quotients gives a recursion whose arguments
//! are all of the form `⌊x/k⌋`. Values up to `threshold` come from a dense
//! sieved prefix table; larger ones are memoised.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::arith::{isqrt, ArithKind, Sieve};
use crate::error::{Error, Result};

pub const DEFAULT_MEMO_BUDGET: usize = 1 << 24;

/// Dense prefix sums below a threshold plus a memo of larger quotient values.
///
/// Readers share the memo; inserts are idempotent so two threads racing on
/// the same key store the same value.
#[derive(Debug)]
pub struct SummatoryCache {
    kind: ArithKind,
    threshold: u64,
    dense: Vec<i64>,
    memo: RwLock<HashMap<u64, i64>>,
    memo_budget: usize,
}

impl SummatoryCache {
    /// Sieves `[1, threshold]` eagerly.
    pub fn new(kind: ArithKind, threshold: u64) -> Result<Self> {
        let threshold = threshold.max(1);
        let dense = Sieve::new(kind).prefix_sums(threshold)?;
        Ok(Self {
            kind,
            threshold,
            dense,
            memo: RwLock::new(HashMap::new()),
            memo_budget: DEFAULT_MEMO_BUDGET,
        })
    }

    /// Cache sized for arguments up to `x`: threshold `⌈x^(2/3)⌉`.
    pub fn for_target(kind: ArithKind, x: u64) -> Result<Self> {
        Self::new(kind, recommended_threshold(x))
    }

    pub fn with_memo_budget(mut self, budget: usize) -> Self {
        self.memo_budget = budget;
        self
    }

    pub fn kind(&self) -> ArithKind {
        self.kind
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    /// Dense prefix table entry, `S(n)` for `n ≤ threshold`.
    pub fn dense(&self, n: u64) -> Option<i64> {
        self.dense.get(n as usize).copied()
    }

    /// The dense table `S(0..=threshold)`.
    pub fn dense_table(&self) -> &[i64] {
        &self.dense
    }

    /// Records a known value, e.g. from a checkpoint file.
    pub fn seed(&self, x: u64, value: i64) -> Result<()> {
        if x <= self.threshold {
            return Ok(());
        }
        self.insert(x, value)
    }

    /// Right side of the quotient identity.
    fn identity_rhs(&self, x: u64) -> i64 {
        match self.kind {
            ArithKind::Liouville => isqrt(x) as i64,
            ArithKind::Mobius => 1,
        }
    }

    /// `S(x)` with `S(0) = 0`.
    pub fn get(&self, x: u64) -> Result<i64> {
        if x <= self.threshold {
            return Ok(self.dense[x as usize]);
        }
        if let Some(&v) = self.memo.read().unwrap().get(&x) {
            return Ok(v);
        }
        let v = self.compute(x)?;
        self.insert(x, v)?;
        Ok(v)
    }

    fn compute(&self, x: u64) -> Result<i64> {
        let mut total = self.identity_rhs(x);
        let mut n = 2u64;
        while n <= x {
            let q = x / n;
            let n_end = x / q;
            let count = (n_end - n + 1) as i64;
            total -= count * self.get(q)?;
            n = n_end + 1;
        }
        Ok(total)
    }

    fn insert(&self, x: u64, v: i64) -> Result<()> {
        let mut memo = self.memo.write().unwrap();
        if memo.contains_key(&x) {
            return Ok(());
        }
        if memo.len() >= self.memo_budget {
            return Err(Error::Capacity {
                requested: memo.len() as u64 + 1,
                max: self.memo_budget as u64,
            });
        }
        memo.insert(x, v);
        Ok(())
    }
}

/// `⌈x^(2/3)⌉`, at least 64.
pub fn recommended_threshold(x: u64) -> u64 {
    ((x as f64).powf(2.0 / 3.0).ceil() as u64).max(64)
}

/// `L(x)` through `cache`.
pub fn l_sublinear(x: u64, cache: &SummatoryCache) -> Result<i64> {
    check_kind(cache, ArithKind::Liouville)?;
    if x == 0 {
        return Err(crate::error::domain("L(x) needs x >= 1"));
    }
    cache.get(x)
}

/// `M(x)` through `cache`.
pub fn m_sublinear(x: u64, cache: &SummatoryCache) -> Result<i64> {
    check_kind(cache, ArithKind::Mobius)?;
    if x == 0 {
        return Err(crate::error::domain("M(x) needs x >= 1"));
    }
    cache.get(x)
}

fn check_kind(cache: &SummatoryCache, kind: ArithKind) -> Result<()> {
    if cache.kind() != kind {
        return Err(Error::Contract(format!(
            "cache holds {} sums, {} requested",
            cache.kind().name(),
            kind.name()
        )));
    }
    Ok(())
}
