use std::fmt::{self, Write as _};

use serde::Serialize;

use super::fit::RegressionFit;
use crate::error::{Error, Result};

/// Registered claim labels. The string form is used in CSV rows and file
/// names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    M,
    En1,
    LemmaA,
    LemmaB,
    LemmaC,
    LemmaD,
    Thm2,
    Thm2Partial,
    HMax,
    Mobius,
    Remark1,
    Remark1Main,
    Remark1Diff,
    Remark2,
    Remark2Integral,
    Remark2Density,
    Zeta,
}

impl ClaimId {
    pub const ALL: [ClaimId; 17] = [
        ClaimId::M,
        ClaimId::En1,
        ClaimId::LemmaA,
        ClaimId::LemmaB,
        ClaimId::LemmaC,
        ClaimId::LemmaD,
        ClaimId::Thm2,
        ClaimId::Thm2Partial,
        ClaimId::HMax,
        ClaimId::Mobius,
        ClaimId::Remark1,
        ClaimId::Remark1Main,
        ClaimId::Remark1Diff,
        ClaimId::Remark2,
        ClaimId::Remark2Integral,
        ClaimId::Remark2Density,
        ClaimId::Zeta,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClaimId::M => "m",
            ClaimId::En1 => "en1",
            ClaimId::LemmaA => "lemma-a",
            ClaimId::LemmaB => "lemma-b",
            ClaimId::LemmaC => "lemma-c",
            ClaimId::LemmaD => "lemma-d",
            ClaimId::Thm2 => "thm2",
            ClaimId::Thm2Partial => "thm2-partial",
            ClaimId::HMax => "h-max",
            ClaimId::Mobius => "mobius",
            ClaimId::Remark1 => "remark1",
            ClaimId::Remark1Main => "remark1-main",
            ClaimId::Remark1Diff => "remark1-diff",
            ClaimId::Remark2 => "remark2",
            ClaimId::Remark2Integral => "remark2-integral",
            ClaimId::Remark2Density => "remark2-density",
            ClaimId::Zeta => "zeta",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == label)
    }

    /// Whether the statement is proved outright or only under the
    /// hypothesis `(m)`.
    pub fn tier(self) -> Tier {
        match self {
            ClaimId::M
            | ClaimId::En1
            | ClaimId::LemmaA
            | ClaimId::LemmaC
            | ClaimId::LemmaD
            | ClaimId::Remark1 => Tier::ConditionalOnM,
            _ => Tier::Unconditional,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Unconditional,
    ConditionalOnM,
}

impl Tier {
    pub fn label(self) -> &'static str {
        match self {
            Tier::Unconditional => "unconditional",
            Tier::ConditionalOnM => "conditional-on-m",
        }
    }
}

/// Normaliser `x^exponent · (ln x)^[log]`; a report's scaled value is the raw
/// value divided by it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scale {
    pub exponent: f64,
    pub log: bool,
}

impl Scale {
    pub const fn power(exponent: f64) -> Self {
        Self {
            exponent,
            log: false,
        }
    }

    pub const fn power_log(exponent: f64) -> Self {
        Self {
            exponent,
            log: true,
        }
    }

    pub fn divisor(&self, x: u64) -> f64 {
        let x = x as f64;
        let p = x.powf(self.exponent);
        if self.log {
            p * x.ln()
        } else {
            p
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exponent == 0.0, self.log) {
            (_, false) => write!(f, "{}", self.exponent),
            (true, true) => f.write_str("log"),
            (false, true) => write!(f, "{}*log", self.exponent),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub x: u64,
    pub raw: f64,
    pub scale: Scale,
    pub scaled: f64,
    pub tier: Tier,
}

impl ClaimReport {
    pub fn new(claim: ClaimId, x: u64, raw: f64, scale: Scale) -> Result<Self> {
        let scaled = raw / scale.divisor(x);
        if !scaled.is_finite() {
            return Err(Error::Numeric(format!(
                "{claim} at x = {x}: scaled value {scaled} from raw {raw}"
            )));
        }
        Ok(Self {
            claim,
            x,
            raw,
            scale,
            scaled,
            tier: claim.tier(),
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.claim,
            self.x,
            self.raw,
            self.scale,
            self.scaled,
            self.tier.label()
        )
    }
}

/// A failed unconditional check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckFailure {
    pub claim: ClaimId,
    pub x: u64,
    pub detail: String,
}

impl From<CheckFailure> for Error {
    fn from(f: CheckFailure) -> Self {
        Error::Assertion {
            claim: f.claim.label().to_string(),
            x: f.x,
            detail: f.detail,
        }
    }
}

/// Everything a runner produces.
#[derive(Debug, Clone, Default)]
pub struct ClaimOutput {
    pub reports: Vec<ClaimReport>,
    pub fits: Vec<(ClaimId, RegressionFit)>,
    /// Claims whose fit could not be formed, with the reason.
    pub skipped_fits: Vec<(ClaimId, String)>,
    pub failures: Vec<CheckFailure>,
}

impl ClaimOutput {
    pub fn push(&mut self, report: ClaimReport) {
        self.reports.push(report);
    }

    pub fn fail(&mut self, claim: ClaimId, x: u64, detail: impl Into<String>) {
        self.failures.push(CheckFailure {
            claim,
            x,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Reports for one claim, in grid order.
    pub fn series(&self, claim: ClaimId) -> impl Iterator<Item = &ClaimReport> {
        self.reports.iter().filter(move |r| r.claim == claim)
    }

    /// Fits `log|raw|` against `log x` for `claim`; too few usable points is
    /// recorded rather than raised.
    pub fn add_fit(&mut self, claim: ClaimId) {
        let points: Vec<(f64, f64)> = self.series(claim).map(|r| (r.x as f64, r.raw)).collect();
        match super::fit::fit_exponent(&points) {
            Ok(fit) => self.fits.push((claim, fit)),
            Err(e) => self.skipped_fits.push((claim, e.to_string())),
        }
    }

    pub fn fit(&self, claim: ClaimId) -> Option<&RegressionFit> {
        self.fits.iter().find(|(c, _)| *c == claim).map(|(_, f)| f)
    }

    /// First failure as an error, if any.
    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            Some(f) => Err(f.clone().into()),
            None => Ok(self),
        }
    }

    /// Canonical order: claim, then `x`.
    pub fn sort(&mut self) {
        self.reports.sort_by_key(|a| (a.claim, a.x));
        self.fits.sort_by_key(|(c, _)| *c);
    }

    pub fn merge(&mut self, other: ClaimOutput) {
        self.reports.extend(other.reports);
        self.fits.extend(other.fits);
        self.skipped_fits.extend(other.skipped_fits);
        self.failures.extend(other.failures);
    }
}

pub const CSV_HEADER: &str = "claim,x,raw,scale_exp,scaled,tier";

/// Comment lines (`# key: value`) placed at the top of every output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputHeader {
    pub version: String,
    pub seed: u64,
    pub grid: String,
    pub a_spec: String,
}

impl OutputHeader {
    pub fn comment_lines(&self, prefix: &str) -> String {
        format!(
            "{prefix} version: {}\n{prefix} seed: {}\n{prefix} grid: {}\n{prefix} a_spec: {}\n",
            self.version, self.seed, self.grid, self.a_spec
        )
    }
}

pub fn to_csv(header: &OutputHeader, reports: &[ClaimReport]) -> String {
    let mut out = header.comment_lines("#");
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct FitRecord<'a> {
    claim: &'a str,
    slope: f64,
    intercept: f64,
    r2: f64,
    n_points: usize,
    dropped_zeros: usize,
}

#[derive(Serialize)]
struct FitDocument<'a> {
    version: &'a str,
    seed: u64,
    grid: &'a str,
    a_spec: &'a str,
    fits: Vec<FitRecord<'a>>,
}

/// Fit summary as pretty-printed JSON. The header fields sit alongside the
/// fit list since JSON has no comments.
pub fn fits_to_json(header: &OutputHeader, fits: &[(ClaimId, RegressionFit)]) -> String {
    let doc = FitDocument {
        version: &header.version,
        seed: header.seed,
        grid: &header.grid,
        a_spec: &header.a_spec,
        fits: fits
            .iter()
            .map(|(c, f)| FitRecord {
                claim: c.label(),
                slope: f.slope,
                intercept: f.intercept,
                r2: f.r2,
                n_points: f.n_points,
                dropped_zeros: f.dropped_zeros,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    claim: &'a str,
    x: u64,
    raw: f64,
    scale_exp: String,
    scaled: f64,
    tier: &'a str,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    version: &'a str,
    seed: u64,
    grid: &'a str,
    a_spec: &'a str,
    reports: Vec<ReportRecord<'a>>,
}

/// The CSV rows as a JSON document with the header fields alongside.
pub fn reports_to_json(header: &OutputHeader, reports: &[ClaimReport]) -> String {
    let doc = ReportDocument {
        version: &header.version,
        seed: header.seed,
        grid: &header.grid,
        a_spec: &header.a_spec,
        reports: reports
            .iter()
            .map(|r| ReportRecord {
                claim: r.claim.label(),
                x: r.x,
                raw: r.raw,
                scale_exp: r.scale.to_string(),
                scaled: r.scaled,
                tier: r.tier.label(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serialises");
    s.push('\n');
    s
}

/// Two whitespace-separated columns `log10(x) log10(|scaled|)`; rows with a
/// zero scaled value are omitted.
pub fn to_plot_data(header: &OutputHeader, claim: ClaimId, reports: &[ClaimReport]) -> String {
    let mut out = header.comment_lines("#");
    let _ = writeln!(out, "# claim: {claim}");
    out.push_str("# log10(x) log10(|scaled|)\n");
    for r in reports
        .iter()
        .filter(|r| r.claim == claim && r.scaled != 0.0)
    {
        let _ = writeln!(out, "{} {}", (r.x as f64).log10(), r.scaled.abs().log10());
    }
    out
}
