//! Elementary arithmetic functions: Liouville `λ`, Möbius `μ`, the alternating
//! sign `q(n) = (-1)^(n-1)` and the square indicator `s(n)`.
//!
//! Per-`n` evaluation uses trial division and is meant for spot checks; bulk
//! work goes through the sieves in [`sieve`].

pub mod cache_file;
pub mod sieve;
mod table;

pub use sieve::{
    primes_up_to, sieve_liouville_block, sieve_mobius_block, ArithKind, Sieve, DEFAULT_BLOCK_SIZE,
};
pub use table::ArithFnTable;

use crate::error::{domain, Result};

/// `⌊√n⌋` computed with integer Newton iteration.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Float seed, then correct: f64 loses precision above 2^52.
    let mut r = (n as f64).sqrt() as u64;
    // Newton steps from above converge monotonically.
    if r == 0 {
        r = 1;
    }
    loop {
        let next = (r + n / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// `⌊n^(1/4)⌋`, using `⌊√⌊√n⌋⌋ = ⌊n^(1/4)⌋`.
pub fn iroot4(n: u64) -> u64 {
    isqrt(isqrt(n))
}

/// Prime factorisation by trial division as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn check_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(domain(format!("{what} is undefined at n = 0")));
    }
    Ok(())
}

/// `λ(n) = (-1)^Ω(n)`.
pub fn liouville(n: u64) -> Result<i8> {
    check_positive(n, "liouville")?;
    let omega: u32 = factorize(n).iter().map(|&(_, e)| e).sum();
    Ok(if omega.is_multiple_of(2) { 1 } else { -1 })
}

/// `μ(n)`: zero unless `n` is squarefree, else `(-1)^ω(n)`.
pub fn mobius(n: u64) -> Result<i8> {
    check_positive(n, "mobius")?;
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// `q(n) = (-1)^(n-1)`: `+1` on odd `n`, `-1` on even `n`.
pub fn q_fn(n: u64) -> Result<i8> {
    check_positive(n, "q")?;
    Ok(if n % 2 == 1 { 1 } else { -1 })
}

/// `s(n)`: 1 when `n` is a perfect square.
pub fn square_indicator(n: u64) -> Result<i8> {
    check_positive(n, "square indicator")?;
    let r = isqrt(n);
    Ok(i8::from(r * r == n))
}

/// Summatory function of `q`: `Q(k) = 1` for odd `k`, else 0.
#[inline]
pub fn q_summatory(k: u64) -> i64 {
    (k & 1) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_near_squares() {
        for r in [
            1u64,
            2,
            3,
            1000,
            65_535,
            1 << 31,
            3_037_000_499,
            u32::MAX as u64,
        ] {
            let sq = r * r;
            assert_eq!(isqrt(sq), r);
            assert_eq!(isqrt(sq - 1), r - 1);
            if let Some(next) = sq.checked_add(1) {
                assert_eq!(isqrt(next), r);
            }
        }
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
        // f64 sqrt rounds up here
        let n = 999_999_999_999_999_999u64;
        assert_eq!(isqrt(n), 999_999_999);
    }

    #[test]
    fn iroot4_matches_brute_force() {
        for n in 1..20_000u64 {
            let mut r = 0u64;
            while (r + 1).pow(4) <= n {
                r += 1;
            }
            assert_eq!(iroot4(n), r, "n = {n}");
        }
    }

    #[test]
    fn liouville_examples() {
        assert_eq!(liouville(1).unwrap(), 1);
        assert_eq!(liouville(12).unwrap(), -1);
        assert_eq!(liouville(9).unwrap(), 1);
        assert!(liouville(0).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn q_and_square_examples() {
        assert_eq!(q_fn(1).unwrap(), 1);
        assert_eq!(q_fn(2).unwrap(), -1);
        assert_eq!(q_fn(7).unwrap(), 1);
        assert_eq!(square_indicator(1).unwrap(), 1);
        assert_eq!(square_indicator(9).unwrap(), 1);
        assert_eq!(square_indicator(10).unwrap(), 0);
        assert_eq!(square_indicator(999_999_998_000_000_001).unwrap(), 1);
        assert_eq!(square_indicator(999_999_998_000_000_002).unwrap(), 0);
        assert!(square_indicator(0).is_err());
    }

    #[test]
    fn q_alternates() {
        for n in 1..10_000 {
            assert_eq!(q_fn(n).unwrap() * q_fn(n + 1).unwrap(), -1);
        }
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..5_000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }
}
