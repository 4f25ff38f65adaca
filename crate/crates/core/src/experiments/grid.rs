use std::fmt;

use crate::error::{domain, Result};

/// Evaluation points plus the free exponents used in reports.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    xs: Vec<u64>,
    /// exponent `ε` in `h_x = O(x^ε)`
    pub epsilon: f64,
    /// exponent `δ` in `s = 1/2 + δ`
    pub delta: f64,
}

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_DELTA: f64 = 0.25;

impl GridSpec {
    pub fn new(xs: Vec<u64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(domain("grid must not be empty"));
        }
        if let Some(&x) = xs.iter().find(|&&x| x < 4) {
            return Err(domain(format!("grid points must be >= 4, got {x}")));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("grid points must be strictly increasing"));
        }
        Ok(Self {
            xs,
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
        })
    }

    /// `10^lo, 10^(lo+1), ..., 10^hi`.
    pub fn decades(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi || hi > 18 {
            return Err(domain(format!("bad decade range {lo}:{hi}")));
        }
        Self::new((lo..=hi).map(|e| 10u64.pow(e)).collect())
    }

    /// Default grid `10^3 .. 10^8`.
    pub fn default_grid() -> Self {
        Self::decades(3, 8).expect("valid decades")
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(domain(format!("epsilon must be >= 0, got {epsilon}")));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(domain(format!("delta must be > 0, got {delta}")));
        }
        self.delta = delta;
        Ok(self)
    }

    pub fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub fn max(&self) -> u64 {
        *self.xs.last().expect("non-empty")
    }

    /// Parses `A:B` (decades between two powers of ten), a comma list, or a
    /// single value. Numbers may be written as `1e6`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((a, b)) = text.split_once(':') {
            let (a, b) = (parse_count(a)?, parse_count(b)?);
            let (ea, eb) = (decade_exponent(a)?, decade_exponent(b)?);
            return Self::decades(ea, eb);
        }
        let xs = text
            .split(',')
            .map(parse_count)
            .collect::<Result<Vec<_>>>()?;
        Self::new(xs)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.xs.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", xs.join(","))
    }
}

fn decade_exponent(x: u64) -> Result<u32> {
    let e = x.ilog10();
    if 10u64.pow(e) != x {
        return Err(domain(format!("{x} is not a power of ten")));
    }
    Ok(e)
}

/// A positive integer written plainly or in scientific notation (`1e5`,
/// `2.5e3`).
pub fn parse_count(text: &str) -> Result<u64> {
    let t = text.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = t
        .parse()
        .map_err(|_| domain(format!("not a number: {text:?}")))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > 9.0e18 {
        return Err(domain(format!("not a non-negative integer: {text:?}")));
    }
    Ok(v as u64)
}
