use crate::error::{domain, Result};

/// Dense samples `f(lo), f(lo + 1), ...` of a small-valued arithmetic function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithFnTable {
    lo: u64,
    values: Vec<i8>,
}

impl ArithFnTable {
    pub fn new(lo: u64, values: Vec<i8>) -> Result<Self> {
        if lo == 0 {
            return Err(domain("table must start at n >= 1"));
        }
        if values.is_empty() {
            return Err(domain("table must hold at least one value"));
        }
        Ok(Self { lo, values })
    }

    /// Table over `[1, n]` from a closure.
    pub fn from_fn(n: u64, mut f: impl FnMut(u64) -> i8) -> Result<Self> {
        Self::new(1, (1..=n).map(&mut f).collect())
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    /// Last index covered.
    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i8> {
        self.values
    }

    pub fn covers(&self, n: u64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    /// `f(n)`, or `None` outside the table.
    pub fn get(&self, n: u64) -> Option<i8> {
        if self.covers(n) {
            Some(self.values[(n - self.lo) as usize])
        } else {
            None
        }
    }

    /// `f(n)` for `n` known to be covered.
    #[inline]
    pub fn at(&self, n: u64) -> i8 {
        self.values[(n - self.lo) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i8)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.lo + i as u64, v))
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().map(|&v| v as i64).sum()
    }

    /// `Σ_{lo ≤ k ≤ lo+i} f(k)` for every `i`.
    pub fn running_sums(&self) -> Vec<i64> {
        let mut acc = 0i64;
        self.values
            .iter()
            .map(|&v| {
                acc += v as i64;
                acc
            })
            .collect()
    }

    /// Requires the table to start at 1 and reach `n`.
    pub(crate) fn require_prefix(&self, n: u64, what: &str) -> Result<()> {
        if self.lo != 1 || self.hi() < n {
            return Err(domain(format!(
                "{what}: table covers [{}, {}], need [1, {n}]",
                self.lo,
                self.hi()
            )));
        }
        Ok(())
    }
}
