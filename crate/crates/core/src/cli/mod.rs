//! Command-line front end. Every subcommand writes one table as CSV or JSON.

pub mod commands;
pub mod output;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use chebpush::pushforward::DEFAULT_GRID;
use chebpush::spectral::DEFAULT_ORDER;
use chebpush::Density;
use clap::{Args, Parser, Subcommand};

pub use output::Format;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_BINS: usize = 50;

/// Exact and asymptotic distribution of T_k(X) and its convergence to the
/// arcsine law.
#[derive(Debug, Parser)]
#[command(name = "chebpush", version, about, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact density of T_k(X) on the cos-spaced grid.
    Pdf(PdfArgs),
    /// Densities and mass left of zero for a range of k.
    Dance(DanceArgs),
    /// Sup-norm error against the arcsine law and the fitted order.
    Converge(ConvergeArgs),
    /// Chebyshev coefficients of the input density.
    Expand(ExpandArgs),
    /// Monte Carlo samples of T_k(X): KS tests and a histogram.
    Mc(McArgs),
    /// Max deviation |s_k - 1/pi| for k = 1..kmax.
    Invariance(InvarianceArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PdfArgs {
    /// arcsine | uniform | ramp | uniform01 | gauss:MU,SIGMA
    #[arg(long)]
    pub dist: Density,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DanceArgs {
    #[arg(long, default_value = "gauss:0,0.25")]
    pub dist: Density,
    /// a,b,c or a..b[:step]
    #[arg(long, default_value = "2..24")]
    pub ks: KList,
    #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub dist: Density,
    /// Ascending, each k >= 2: a,b,c or a..b[:step]
    #[arg(long, default_value = "8,16,32,64,128")]
    pub ks: KList,
    /// At least 64 points.
    #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub dist: Density,
    /// Truncation order L.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub dist: Density,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    /// Sample size, at least 100.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Histogram bins on [-1, 1], at least 4.
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct InvarianceArgs {
    #[arg(long, default_value = "arcsine")]
    pub dist: Density,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub kmax: u32,
    #[arg(long, default_value_t = DEFAULT_GRID, value_parser = grid_parser)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn grid_parser(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err("grid needs at least 2 points".into());
    }
    Ok(n)
}

/// A list of degrees, written `a,b,c` or `a..b[:step]` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KList(pub Vec<u32>);

impl FromStr for KList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| -> Result<u32, String> {
            let k: u32 = t
                .trim()
                .parse()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))?;
            if k == 0 {
                return Err("degrees must be >= 1".into());
            }
            Ok(k)
        };
        if let Some((a, rest)) = s.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, step)) => (b, parse(step)?),
                None => (rest, 1),
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            return Ok(KList((a..=b).step_by(step as usize).collect()));
        }
        let ks = s
            .split(',')
            .map(parse)
            .collect::<Result<Vec<u32>, String>>()?;
        Ok(KList(ks))
    }
}

impl fmt::Display for KList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
