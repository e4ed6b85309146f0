//! Command-line configuration and value parsers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use fishburn_core::Cyclotomic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "fishburn", version, about = "Exact q-series and enumeration checks for interval orders")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Series cache directory (overrides FISHBURN_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a named series to a total degree.
    Expand(ExpandArgs),
    /// Enumerate matrices of one size and tabulate their statistics.
    Enumerate(EnumerateArgs),
    /// Verify an identity, a suite (`thm-main`) or everything (`all`).
    Verify(VerifyArgs),
    /// Evaluate a terminating sum exactly.
    Terminating(TerminatingArgs),
    /// High-precision numeric check of an analytic identity.
    Numeric(NumericArgs),
    /// Exact check of the terminating very-well-poised sum.
    Watson(WatsonArgs),
    /// Ratio table against the leading asymptotic term.
    Asymptotics(AsymptoticsArgs),
    /// Expansions and checks at roots of unity.
    Roots(RootsArgs),
    /// Compare computed coefficients with an OEIS b-file.
    OeisCheck(OeisArgs),
    /// Pentagonal number theorem and the distinct-partition table.
    Pentagonal(PentagonalArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Series name, e.g. F1, G3, F3-KR-first-form, gamma1-lhs, pentagonal-sum.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=60))]
    pub order: u32,
    /// Exact parameters in order (gamma, then r), written `num/den`.
    #[arg(long = "param", value_parser = parse_rational, allow_hyphen_values = true)]
    pub params: Vec<BigRational>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// fishburn, rowFishburn or selfDual.
    #[arg(long)]
    pub family: String,
    /// Matrix size (reduced size for self-dual matrices).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=9))]
    pub size: u32,
    /// Print every matrix in dump format.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity id, `thm-main` or `all`.
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=200))]
    pub order: u32,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub gamma: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub r: Option<BigRational>,
}

#[derive(Debug, Args)]
pub struct TerminatingArgs {
    /// comp1, comp2, or one expression (comp1-left, comp1-mid, comp2-first, comp2-mid, comp2-right).
    #[arg(long)]
    pub expr: String,
    /// `num/den`, a root of unity `zK^J`, or a cyclotomic number `K:c0,c1,...`.
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    pub p: ExactValue,
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    pub q: ExactValue,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// rogers-fine (rf), generalized-rf (grf), watson-limit (wat2), or grf-to-rf.
    #[arg(long)]
    pub id: String,
    /// `name=re` or `name=re,im`.
    #[arg(long = "param", value_parser = parse_complex_param, allow_hyphen_values = true)]
    pub params: Vec<(String, (f64, f64))>,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(20..=400))]
    pub digits: u32,
    /// Tolerance is 10^-tol_exp.
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..=300))]
    pub tol_exp: u32,
    #[arg(long, default_value_t = 4000, value_parser = clap::value_parser!(u64).range(10..=1_000_000))]
    pub max_summands: u64,
    /// Check this many random parameter draws instead of `--param`.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub random: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WatsonArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub n: u32,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub b: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub c: Option<BigRational>,
    /// Defaults to q.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub d: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub e: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub q: Option<BigRational>,
    /// Check this many random pole-free tuples instead.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub random: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    /// fishburn or rowFishburn.
    #[arg(long)]
    pub which: String,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..=120))]
    pub n_max: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootsAction {
    Explore,
    Expand,
    Check,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(value_enum)]
    pub action: RootsAction,
    /// Conductor: p0 = zeta_k^a, q0 = zeta_k^b.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(0..=10))]
    pub order: u32,
    /// Expression for `expand`.
    #[arg(long, default_value = "comp1-left")]
    pub expr: String,
    /// comp1 or comp2, for `check`.
    #[arg(long, default_value = "comp2")]
    pub family: String,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// A022493 (Fishburn numbers) or A158691 (self-dual interval orders).
    #[arg(long)]
    pub seq: String,
    #[arg(long)]
    pub bfile: PathBuf,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(0..=120))]
    pub max_n: u64,
    /// Download the b-file first if it is missing (needs network and curl).
    #[arg(long)]
    pub fetch: bool,
}

#[derive(Debug, Args)]
pub struct PentagonalArgs {
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub order: u32,
    /// Largest part covered by the partition table check.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=30))]
    pub max_part: u32,
}

/// A parameter that is either rational or cyclotomic.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl ExactValue {
    pub fn to_cyclotomic(&self) -> Cyclotomic {
        match self {
            ExactValue::Rational(q) => Cyclotomic::rational(q.clone()),
            ExactValue::Cyclotomic(c) => c.clone(),
        }
    }
}

/// `n` or `n/d` with integer `n`, `d != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("`{s}` is not a rational `num/den`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("`{s}` is not a rational `num/den`"))?;
    if d.is_zero() {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_exact(s: &str) -> Result<ExactValue, String> {
    if let Some(rest) = s.strip_prefix('z') {
        let (k, j) = rest.split_once('^').unwrap_or((rest, "1"));
        let bad = || format!("`{s}` is not a root of unity `zK^J`");
        let k: u32 = k.parse().map_err(|_| bad())?;
        let j: i64 = j.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        return Ok(ExactValue::Cyclotomic(Cyclotomic::zeta(k, j)));
    }
    if s.contains(':') {
        Cyclotomic::parse_text(s)
            .map(ExactValue::Cyclotomic)
            .ok_or_else(|| format!("`{s}` is not a cyclotomic number `k:c0,c1,...`"))
    } else {
        parse_rational(s).map(ExactValue::Rational)
    }
}

pub fn parse_complex_param(s: &str) -> Result<(String, (f64, f64)), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("`{s}` is not `name=re[,im]`"))?;
    let mut parts = value.split(',');
    let num = |t: Option<&str>| -> Result<f64, String> {
        let t = t.unwrap_or("0").trim();
        let v: f64 = t.parse().map_err(|_| format!("`{t}` is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("`{t}` is not finite"))
        }
    };
    let re = num(parts.next())?;
    let im = num(parts.next())?;
    if parts.next().is_some() {
        return Err(format!("`{s}` has more than two components"));
    }
    Ok((name.trim().to_string(), (re, im)))
}
