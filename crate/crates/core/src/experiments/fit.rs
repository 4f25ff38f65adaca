use crate::error::{domain, Result};

/// Least-squares line through `(ln x, ln|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub n_points: usize,
    pub dropped_zeros: usize,
}

pub const MIN_FIT_POINTS: usize = 3;

/// Fits `ln|value| = slope · ln x + intercept`. Zero values are dropped and
/// counted; at least three must remain.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<RegressionFit> {
    let mut dropped_zeros = 0;
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(x, v) in points {
        if !(x > 0.0) || !x.is_finite() || !v.is_finite() {
            return Err(domain(format!("unusable point ({x}, {v})")));
        }
        if v == 0.0 {
            dropped_zeros += 1;
            continue;
        }
        xs.push(x.ln());
        ys.push(v.abs().ln());
    }
    let n = xs.len();
    if n < MIN_FIT_POINTS {
        return Err(domain(format!(
            "need {MIN_FIT_POINTS} non-zero points, have {n}"
        )));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(domain("all x values coincide"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept,
        r2,
        n_points: n,
        dropped_zeros,
    })
}
