//! Block sieves for `λ` and `μ`.
//!
//! Blocks starting at 1 use a linear smallest-prime-factor sieve. Any other
//! block `[lo, hi]` is handled by a segmented sieve over the primes up to
//! `√hi`: every prime power dividing `n` multiplies a running product and
//! flips the sign; whatever is left of `n` afterwards is a single prime.

use crate::arith::{isqrt, ArithFnTable};
use crate::error::{domain, Error, Result};

/// Default maximum block length (2^22 entries).
pub const DEFAULT_BLOCK_SIZE: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithKind {
    Liouville,
    Mobius,
}

impl ArithKind {
    pub fn name(self) -> &'static str {
        match self {
            ArithKind::Liouville => "lambda",
            ArithKind::Mobius => "mobius",
        }
    }
}

/// Primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Block sieve with a configurable maximum block length.
#[derive(Debug, Clone)]
pub struct Sieve {
    kind: ArithKind,
    max_block: usize,
}

impl Sieve {
    pub fn new(kind: ArithKind) -> Self {
        Self {
            kind,
            max_block: DEFAULT_BLOCK_SIZE,
        }
    }

    pub fn with_max_block(mut self, max_block: usize) -> Self {
        self.max_block = max_block.max(1);
        self
    }

    pub fn kind(&self) -> ArithKind {
        self.kind
    }

    pub fn max_block(&self) -> usize {
        self.max_block
    }

    /// Values on `[lo, hi]` as one table.
    pub fn block(&self, lo: u64, hi: u64) -> Result<ArithFnTable> {
        self.check_range(lo, hi)?;
        let len = hi - lo + 1;
        if len > self.max_block as u64 {
            return Err(Error::Capacity {
                requested: len,
                max: self.max_block as u64,
            });
        }
        let values = if lo == 1 {
            spf_table(self.kind, hi as usize)
        } else {
            let primes = primes_up_to(isqrt(hi));
            segmented(self.kind, lo, hi, &primes)
        };
        ArithFnTable::new(lo, values)
    }

    /// Streams `[lo, hi]` in consecutive blocks of at most `max_block` entries.
    pub fn for_each_block<F>(&self, lo: u64, hi: u64, mut f: F) -> Result<()>
    where
        F: FnMut(&ArithFnTable),
    {
        self.check_range(lo, hi)?;
        let primes = primes_up_to(isqrt(hi));
        let mut start = lo;
        loop {
            let end = hi.min(start.saturating_add(self.max_block as u64 - 1));
            let values = if start == 1 {
                spf_table(self.kind, end as usize)
            } else {
                segmented(self.kind, start, end, &primes)
            };
            f(&ArithFnTable::new(start, values)?);
            if end == hi {
                return Ok(());
            }
            start = end + 1;
        }
    }

    /// Prefix sums `S(0..=n)` with `S(0) = 0`, e.g. `L(k)` or `M(k)`.
    pub fn prefix_sums(&self, n: u64) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(n as usize + 1);
        out.push(0i64);
        if n == 0 {
            return Ok(out);
        }
        let mut acc = 0i64;
        self.for_each_block(1, n, |block| {
            for &v in block.values() {
                acc += v as i64;
                out.push(acc);
            }
        })?;
        Ok(out)
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo == 0 {
            return Err(domain("sieve range must start at n >= 1"));
        }
        if hi < lo {
            return Err(domain(format!("empty sieve range [{lo}, {hi}]")));
        }
        Ok(())
    }
}

/// `λ(n)` for `n ∈ [lo, hi]` with the default block limit.
pub fn sieve_liouville_block(lo: u64, hi: u64) -> Result<ArithFnTable> {
    Sieve::new(ArithKind::Liouville).block(lo, hi)
}

/// `μ(n)` for `n ∈ [lo, hi]` with the default block limit.
pub fn sieve_mobius_block(lo: u64, hi: u64) -> Result<ArithFnTable> {
    Sieve::new(ArithKind::Mobius).block(lo, hi)
}

/// Linear sieve over `[1, n]`.
fn spf_table(kind: ArithKind, n: usize) -> Vec<i8> {
    let mut vals = vec![0i8; n + 1];
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    if n >= 1 {
        vals[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            vals[i] = -1;
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > n {
                break;
            }
            spf[m] = p;
            vals[m] = match kind {
                ArithKind::Liouville => -vals[i],
                ArithKind::Mobius => {
                    if p == si {
                        0
                    } else {
                        -vals[i]
                    }
                }
            };
        }
    }
    vals.remove(0);
    vals
}

fn segmented(kind: ArithKind, lo: u64, hi: u64, primes: &[u64]) -> Vec<i8> {
    let len = (hi - lo + 1) as usize;
    let mut sign = vec![1i8; len];
    let mut prod = vec![1u64; len];

    for &p in primes {
        if p * p > hi {
            break;
        }
        match kind {
            ArithKind::Liouville => {
                let mut pk = p;
                loop {
                    let mut m = lo.div_ceil(pk) * pk;
                    while m <= hi {
                        let i = (m - lo) as usize;
                        prod[i] *= p;
                        sign[i] = -sign[i];
                        m += pk;
                    }
                    match pk.checked_mul(p) {
                        Some(next) if next <= hi => pk = next,
                        _ => break,
                    }
                }
            }
            ArithKind::Mobius => {
                let mut m = lo.div_ceil(p) * p;
                while m <= hi {
                    let i = (m - lo) as usize;
                    prod[i] *= p;
                    sign[i] = -sign[i];
                    m += p;
                }
                let p2 = p * p;
                let mut m = lo.div_ceil(p2) * p2;
                while m <= hi {
                    sign[(m - lo) as usize] = 0;
                    m += p2;
                }
            }
        }
    }

    for (i, s) in sign.iter_mut().enumerate() {
        if prod[i] != lo + i as u64 {
            *s = -*s;
        }
    }
    sign
}
