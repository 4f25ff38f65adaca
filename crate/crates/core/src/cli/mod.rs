//! The `liouville` command-line front end.
//!
//! Exit codes: 0 success, 1 a failed check or violated hypothesis, 2 a usage
//! error.

pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::arith::cache_file::{self, encode};
use crate::arith::{ArithKind, Sieve};
use crate::error::{domain, Error, Result};
use crate::experiments::{
    fits_to_json, parse_count, reports_to_json, run_claim_en1, run_claim_m_with, run_lemma_a,
    run_lemma_b_residual, run_lemma_c, run_lemma_d, run_mobius_variant, run_remark1_sum,
    run_remark2, run_theorem2, run_zeta_check, to_csv, to_plot_data, ASpec, ClaimId, ClaimOutput,
    ClaimReport, GridSpec, OutputHeader, Scale,
};
use crate::summatory::checkpoint::{read_checkpoint, write_checkpoint};
use crate::summatory::SummatoryCache;
use verify::{run_suite, Suite};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_GRID: &str = "1e3:1e8";

#[derive(Debug, Parser)]
#[command(
    name = "liouville",
    version,
    about = "Liouville-function sieves, identities and experiments"
)]
pub struct Cli {
    /// Directory for sieve caches and checkpoints (default: $LIOUVILLE_CACHE_DIR or ./.cache)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve λ or μ over [lo, hi] into the binary cache format
    Sieve(SieveArgs),
    /// Run an exact-identity suite
    Verify(VerifyArgs),
    /// Run a claim experiment over a grid and write CSV, fit JSON and plot data
    Claim(ClaimArgs),
    /// Evaluate L(x) or M(x) sublinearly, resuming from the checkpoint file
    Sum(SumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FnKind {
    Lambda,
    Mobius,
}

impl From<FnKind> for ArithKind {
    fn from(k: FnKind) -> Self {
        match k {
            FnKind::Lambda => ArithKind::Liouville,
            FnKind::Mobius => ArithKind::Mobius,
        }
    }
}

fn count_arg(s: &str) -> std::result::Result<u64, String> {
    parse_count(s).map_err(|e| e.to_string())
}

fn positive_count_arg(s: &str) -> std::result::Result<u64, String> {
    match count_arg(s)? {
        0 => Err("must be >= 1".into()),
        v => Ok(v),
    }
}

#[derive(Debug, clap::Args)]
pub struct SieveArgs {
    #[arg(long = "fn", value_enum)]
    pub kind: FnKind,
    #[arg(long, value_parser = positive_count_arg)]
    pub lo: u64,
    #[arg(long, value_parser = positive_count_arg)]
    pub hi: u64,
    /// Output file (default: <cache-dir>/<fn>_<lo>_<hi>.bin)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest argument checked (default depends on the suite)
    #[arg(long, value_parser = positive_count_arg)]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimName {
    M,
    En1,
    LemmaA,
    LemmaB,
    LemmaC,
    LemmaD,
    Thm2,
    Mobius,
    Remark1,
    Remark2,
    Zeta,
}

impl ClaimName {
    pub fn label(self) -> &'static str {
        match self {
            ClaimName::M => "m",
            ClaimName::En1 => "en1",
            ClaimName::LemmaA => "lemma-a",
            ClaimName::LemmaB => "lemma-b",
            ClaimName::LemmaC => "lemma-c",
            ClaimName::LemmaD => "lemma-d",
            ClaimName::Thm2 => "thm2",
            ClaimName::Mobius => "mobius",
            ClaimName::Remark1 => "remark1",
            ClaimName::Remark2 => "remark2",
            ClaimName::Zeta => "zeta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct ClaimArgs {
    #[arg(value_enum)]
    pub claim: ClaimName,
    /// `A:B` for the decades from A to B, or a comma list
    #[arg(long, default_value = DEFAULT_GRID)]
    pub grid: String,
    /// square, unit-at-1, powers-of-2, all-ones, or a two-column `n,value` CSV
    #[arg(long = "a", default_value = "square")]
    pub a_spec: String,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Exponent for the zeta check
    #[arg(long, default_value_t = 2.0)]
    pub s: f64,
    /// Integration limit for the zeta check
    #[arg(long = "X", default_value = "1e5", value_parser = positive_count_arg)]
    pub x_limit: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, default_value_t = crate::experiments::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, default_value_t = crate::experiments::DEFAULT_DELTA)]
    pub delta: f64,
}

#[derive(Debug, clap::Args)]
pub struct SumArgs {
    #[arg(long = "fn", value_enum)]
    pub kind: FnKind,
    #[arg(long, value_parser = positive_count_arg)]
    pub x: u64,
    /// Checkpoint file (default: <cache-dir>/<fn>_checkpoint.csv)
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

/// Everything that determines a claim run's output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub a_spec: ASpec,
    /// `a` as given on the command line
    pub a_label: String,
    pub cache_dir: PathBuf,
    pub output: OutputFormat,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_args(args: &ClaimArgs, cache_dir: PathBuf) -> Result<Self> {
        let grid = GridSpec::parse(&args.grid)?
            .with_epsilon(args.epsilon)?
            .with_delta(args.delta)?;
        Ok(Self {
            grid,
            a_spec: resolve_a_spec(&args.a_spec)?,
            a_label: args.a_spec.clone(),
            cache_dir,
            output: args.format,
            seed: args.seed,
        })
    }

    pub fn header(&self) -> OutputHeader {
        OutputHeader {
            version: VERSION.to_string(),
            seed: self.seed,
            grid: self.grid.to_string(),
            a_spec: self.a_label.clone(),
        }
    }
}

/// A built-in name, or a path to an `n,value` CSV.
pub fn resolve_a_spec(text: &str) -> Result<ASpec> {
    if let Ok(spec) = ASpec::parse(text) {
        return Ok(spec);
    }
    let path = Path::new(text);
    if !path.is_file() {
        return ASpec::parse(text);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| text.to_string());
    ASpec::from_csv(&name, &fs::read_to_string(path)?, path)
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Format { .. } | Error::Capacity { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<u8> {
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(cache_file::cache_dir);
    match &cli.command {
        Command::Sieve(a) => cmd_sieve(a, &cache_dir),
        Command::Verify(a) => cmd_verify(a),
        Command::Claim(a) => cmd_claim(a, cache_dir),
        Command::Sum(a) => cmd_sum(a, &cache_dir),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cmd_sieve(args: &SieveArgs, cache_dir: &Path) -> Result<u8> {
    if args.hi < args.lo {
        return Err(domain(format!("empty range [{}, {}]", args.lo, args.hi)));
    }
    let kind = ArithKind::from(args.kind);
    let len = args.hi - args.lo + 1;
    let table = Sieve::new(kind)
        .with_max_block(len as usize)
        .block(args.lo, args.hi)?;
    let path = args
        .out
        .clone()
        .unwrap_or_else(|| cache_dir.join(format!("{}_{}_{}.bin", kind.name(), args.lo, args.hi)));
    let bytes = encode(&table);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(&path, &bytes)?;
    println!("wrote {}", path.display());
    println!("count {}", table.len());
    println!("sum {}", table.sum());
    println!("sha256 {}", hex(&Sha256::digest(&bytes)));
    Ok(0)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let n_max = args.n_max.unwrap_or_else(|| args.suite.default_n_max());
    let out = run_suite(args.suite, n_max, args.seed)?;
    println!("{}", out.summary());
    Ok(if out.passed() { 0 } else { 1 })
}

fn checkpoint_path(cache_dir: &Path, kind: ArithKind) -> PathBuf {
    cache_dir.join(format!("{}_checkpoint.csv", kind.name()))
}

/// Cache for arguments up to `target`, seeded with any checkpointed values.
pub fn load_cache(kind: ArithKind, target: u64, checkpoint: &Path) -> Result<SummatoryCache> {
    let cache = SummatoryCache::for_target(kind, target)?;
    if checkpoint.is_file() {
        for (x, v) in read_checkpoint(checkpoint)? {
            cache.seed(x, v)?;
        }
    }
    Ok(cache)
}

/// Merges `values` into the checkpoint file, sorted by `x`.
pub fn save_checkpoint(checkpoint: &Path, values: &[(u64, i64)]) -> Result<()> {
    let mut rows: BTreeMap<u64, i64> = BTreeMap::new();
    if checkpoint.is_file() {
        rows.extend(read_checkpoint(checkpoint)?);
    }
    rows.extend(values.iter().copied());
    let rows: Vec<(u64, i64)> = rows.into_iter().collect();
    write_checkpoint(checkpoint, &rows)
}

pub fn cmd_sum(args: &SumArgs, cache_dir: &Path) -> Result<u8> {
    let kind = ArithKind::from(args.kind);
    let path = args
        .checkpoint
        .clone()
        .unwrap_or_else(|| checkpoint_path(cache_dir, kind));
    let cache = load_cache(kind, args.x, &path)?;
    let v = cache.get(args.x)?;
    save_checkpoint(&path, &[(args.x, v)])?;
    let name = match kind {
        ArithKind::Liouville => "L",
        ArithKind::Mobius => "M",
    };
    println!("{name}({}) = {v}", args.x);
    Ok(0)
}

/// Runs the experiment for `claim` without touching the filesystem, except
/// for the `L` checkpoint used by `m`.
pub fn run_claim(claim: ClaimName, config: &RunConfig, args: &ClaimArgs) -> Result<ClaimOutput> {
    let grid = &config.grid;
    let mut out = match claim {
        ClaimName::M => {
            let path = checkpoint_path(&config.cache_dir, ArithKind::Liouville);
            let cache = load_cache(ArithKind::Liouville, grid.max(), &path)?;
            let out = run_claim_m_with(grid, &cache)?;
            let values = grid
                .xs()
                .iter()
                .map(|&x| cache.get(x).map(|v| (x, v)))
                .collect::<Result<Vec<_>>>()?;
            save_checkpoint(&path, &values)?;
            out
        }
        ClaimName::En1 => run_claim_en1(grid)?,
        ClaimName::LemmaA => run_lemma_a(grid)?,
        ClaimName::LemmaB => run_lemma_b_residual(grid)?,
        ClaimName::LemmaC => run_lemma_c(grid)?,
        ClaimName::LemmaD => run_lemma_d(grid)?,
        ClaimName::Thm2 => run_theorem2(&config.a_spec, grid)?,
        ClaimName::Mobius => run_mobius_variant(&config.a_spec, grid)?,
        ClaimName::Remark1 => run_remark1_sum(grid)?,
        ClaimName::Remark2 => run_remark2(grid)?,
        ClaimName::Zeta => {
            let c = run_zeta_check(args.s, args.x_limit)?;
            println!("s {}", c.s);
            println!("X {}", c.x_max);
            println!("lhs {}", c.lhs);
            println!("rhs {}", c.rhs);
            println!("tail_bound {}", c.tail_bound);
            let mut out = ClaimOutput::default();
            out.push(ClaimReport::new(
                ClaimId::Zeta,
                c.x_max,
                c.difference(),
                Scale::power(0.0),
            )?);
            if !c.passed() {
                out.fail(
                    ClaimId::Zeta,
                    c.x_max,
                    format!(
                        "lhs = {}, rhs = {}, tail bound = {}",
                        c.lhs, c.rhs, c.tail_bound
                    ),
                );
            }
            out
        }
    };
    out.sort();
    Ok(out)
}

/// Files written for one claim run, in creation order.
pub fn write_outputs(
    claim: ClaimName,
    config: &RunConfig,
    out: &ClaimOutput,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let header = config.header();
    let label = claim.label();
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
        Ok(())
    };
    match config.output {
        OutputFormat::Csv => put(format!("{label}.csv"), to_csv(&header, &out.reports))?,
        OutputFormat::Json => put(
            format!("{label}.json"),
            reports_to_json(&header, &out.reports),
        )?,
    }
    put(
        format!("{label}_fit.json"),
        fits_to_json(&header, &out.fits),
    )?;
    let mut ids: Vec<ClaimId> = out.reports.iter().map(|r| r.claim).collect();
    ids.dedup();
    for id in ids {
        put(
            format!("{id}.plot"),
            to_plot_data(&header, id, &out.reports),
        )?;
    }
    Ok(written)
}

pub fn cmd_claim(args: &ClaimArgs, cache_dir: PathBuf) -> Result<u8> {
    let config = RunConfig::from_args(args, cache_dir)?;
    let out = run_claim(args.claim, &config, args)?;
    for path in write_outputs(args.claim, &config, &out, &args.out)? {
        println!("wrote {}", path.display());
    }
    for (id, fit) in &out.fits {
        println!(
            "fit {id}: slope {:.4} intercept {:.4} r2 {:.4} points {} zeros dropped {}",
            fit.slope, fit.intercept, fit.r2, fit.n_points, fit.dropped_zeros
        );
    }
    for (id, reason) in &out.skipped_fits {
        println!("fit {id}: skipped ({reason})");
    }
    for f in &out.failures {
        println!("FAIL {} at x={}: {}", f.claim, f.x, f.detail);
    }
    if out.passed() {
        println!("PASS {} rows", out.reports.len());
        Ok(0)
    } else {
        Ok(1)
    }
}
