//! Exact-identity suites behind `liouville verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{isqrt, q_fn, ArithFnTable, ArithKind, Sieve};
use crate::dirichlet::{
    convolve_at, convolve_prefix, hyperbola_sum, lambda_conv_q_closed, ConvInput,
};
use crate::error::{domain, Result};
use crate::experiments::remark2_identity;
use crate::rational::Rational;
use crate::summatory::{abel_sum, grouped_quotient_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Σ_{n≤x} L(⌊x/n⌋) = ⌊√x⌋ for every x ≤ n-max
    Identity,
    /// closed form of (λ∗q)(n) against divisor sums for n ≤ n-max
    ConvClosedForm,
    /// three-term split against full convolution, 50 seeded pairs, x ≤ n-max
    Hyperbola,
    /// partial summation against direct sums at 100 seeded x ≤ n-max
    Abel,
    /// Σ_{n≤√x} s(n)⌊√(x/n)⌋ = Σ_{m≤x^{1/4}} ⌊√x/m⌋ for every x ≤ n-max
    Remark2,
}

impl Suite {
    pub fn default_n_max(self) -> u64 {
        match self {
            Suite::Identity => 10_000,
            Suite::ConvClosedForm => 100_000,
            Suite::Hyperbola => 1000,
            Suite::Abel => 100_000,
            Suite::Remark2 => 1_000_000,
        }
    }
}

pub const HYPERBOLA_PAIRS: usize = 50;
pub const ABEL_POINTS: usize = 100;
pub const ABEL_TOLERANCE: f64 = 1e-9;

/// Outcome of one suite: how many cases ran and the first failure.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub checked: u64,
    pub failure: Option<(u64, String)>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// `PASS k/k` or `FAIL at x=...`.
    pub fn summary(&self) -> String {
        match &self.failure {
            None => format!("PASS {0}/{0}", self.checked),
            Some((x, detail)) => format!("FAIL at x={x}: {detail}"),
        }
    }
}

pub fn run_suite(suite: Suite, n_max: u64, seed: u64) -> Result<VerifyOutcome> {
    if n_max == 0 {
        return Err(domain("n-max must be >= 1"));
    }
    match suite {
        Suite::Identity => identity(n_max),
        Suite::ConvClosedForm => conv_closed_form(n_max),
        Suite::Hyperbola => hyperbola(n_max, seed),
        Suite::Abel => abel(n_max, seed),
        Suite::Remark2 => Ok(scan(n_max, |x| {
            let (l, r) = remark2_identity(x);
            (l != r).then(|| format!("lhs = {l}, rhs = {r}"))
        })),
    }
}

/// Checks `1..=n_max` in order, stopping at the first failure.
fn scan(n_max: u64, mut check: impl FnMut(u64) -> Option<String>) -> VerifyOutcome {
    for x in 1..=n_max {
        if let Some(detail) = check(x) {
            return VerifyOutcome {
                checked: x,
                failure: Some((x, detail)),
            };
        }
    }
    VerifyOutcome {
        checked: n_max,
        failure: None,
    }
}

fn identity(n_max: u64) -> Result<VerifyOutcome> {
    let l = Sieve::new(ArithKind::Liouville).prefix_sums(n_max)?;
    let mut err = None;
    let out = scan(n_max, |x| {
        match grouped_quotient_sum(x, 1, x, |q| Ok(l[q as usize])) {
            Ok(v) if v == isqrt(x) as i64 => None,
            Ok(v) => Some(format!("sum = {v}, floor(sqrt x) = {}", isqrt(x))),
            Err(e) => {
                err = Some(e);
                Some("evaluation error".into())
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn conv_closed_form(n_max: u64) -> Result<VerifyOutcome> {
    let lam = Sieve::new(ArithKind::Liouville).block(1, n_max)?;
    let mut err = None;
    let out = scan(n_max, |n| {
        let direct = convolve_at(|d| lam.at(d) as i64, |e| q_fn(e).expect("e >= 1") as i64, n);
        match (direct, lambda_conv_q_closed(n)) {
            (Ok(d), Ok(c)) if d == c as i64 => None,
            (Ok(d), Ok(c)) => Some(format!("divisor sum = {d}, closed form = {c}")),
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                Some("evaluation error".into())
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Random table over `[1, n]` with values in `{-1, 0, 1}`.
pub fn random_table(rng: &mut impl Rng, n: u64) -> Result<ArithFnTable> {
    ArithFnTable::from_fn(n, |_| rng.random_range(-1i8..=1))
}

fn hyperbola(n_max: u64, seed: u64) -> Result<VerifyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..HYPERBOLA_PAIRS {
        let x = rng.random_range(1..=n_max);
        let f = random_table(&mut rng, x)?;
        let g = random_table(&mut rng, x)?;
        let direct = convolve_prefix(&ConvInput::new(&f, &g)?)?.prefix_sums()[x as usize];
        let (fs, gs) = (f.running_sums(), g.running_sums());
        let f_sum = |k: u64| if k == 0 { 0 } else { fs[(k - 1) as usize] };
        let g_sum = |k: u64| if k == 0 { 0 } else { gs[(k - 1) as usize] };
        let r = isqrt(x);
        let splits = [
            (Rational::integer(1), Rational::integer(x)),
            (Rational::integer(r), Rational::new(x, r)?),
            (Rational::integer(x), Rational::integer(1)),
        ];
        for (a, b) in splits {
            let v = hyperbola_sum(
                |n| f.at(n) as i64,
                f_sum,
                |n| g.at(n) as i64,
                g_sum,
                x,
                a,
                b,
            )?;
            checked += 1;
            if v != direct {
                return Ok(VerifyOutcome {
                    checked,
                    failure: Some((x, format!("split a = {a}: {v} vs direct {direct}"))),
                });
            }
        }
    }
    Ok(VerifyOutcome {
        checked,
        failure: None,
    })
}

/// `Σ_{n≤x} λ(n) n^{-s}` directly and through partial summation, `s`
/// drawn from `(0, 2)`.
fn abel(n_max: u64, seed: u64) -> Result<VerifyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lam = Sieve::new(ArithKind::Liouville).block(1, n_max)?;
    let l: Vec<i64> = std::iter::once(0).chain(lam.running_sums()).collect();
    for i in 0..ABEL_POINTS {
        let x = rng.random_range(1..=n_max);
        let s: f64 = rng.random_range(0.05..2.0);
        let f = |t: f64| t.powf(-s);
        let direct: f64 = (1..=x).map(|n| lam.at(n) as f64 * f(n as f64)).sum();
        let via = abel_sum(|k| l[k as usize] as f64, f, x as f64)?;
        let tol = ABEL_TOLERANCE * (1.0 + direct.abs() + (x as f64).sqrt());
        if (direct - via).abs() > tol {
            return Ok(VerifyOutcome {
                checked: i as u64 + 1,
                failure: Some((
                    x,
                    format!("s = {s}: direct {direct}, partial summation {via}"),
                )),
            });
        }
    }
    Ok(VerifyOutcome {
        checked: ABEL_POINTS as u64,
        failure: None,
    })
}
