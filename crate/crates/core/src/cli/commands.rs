//! One function per subcommand, each producing a [`Table`].

use std::fmt;

use chebpush::densities::{sample, Distribution};
use chebpush::montecarlo::{histogram, ks_statistic, push_samples};
use chebpush::pushforward::{
    asymptotic_s_k, convergence_report, cos_grid, evaluate, mass_left_of_zero, pushforward_cdf, s_k,
};
use chebpush::spectral::{expand_density, ChebSeries};
use chebpush::{Density, Error};

use super::output::{Cell, Table};
use super::{Cli, Command, ConvergeArgs, DanceArgs, ExpandArgs, InvarianceArgs, McArgs, PdfArgs};

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent arguments (exit 2).
    Usage(String),
    /// A numerical guard tripped or output could not be written (exit 1).
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("cannot write output: {e}"))
    }
}

type Outcome = Result<Table, CliError>;

/// Runs the parsed command and writes its table.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let (table, output) = match cli.command {
        Command::Pdf(a) => (pdf(&a)?, a.output),
        Command::Dance(a) => (dance(&a)?, a.output),
        Command::Converge(a) => (converge(&a)?, a.output),
        Command::Expand(a) => (expand(&a)?, a.output),
        Command::Mc(a) => (mc(&a)?, a.output),
        Command::Invariance(a) => (invariance(&a)?, a.output),
    };
    if let Some((row, column)) = table.first_non_finite() {
        return Err(CliError::Numerical(format!(
            "non-finite value in column `{column}` at row {row}"
        )));
    }
    table.write(output.format, output.out.as_deref())?;
    Ok(())
}

pub fn pdf(a: &PdfArgs) -> Outcome {
    let r = evaluate(&a.dist, a.k, a.grid)?;
    let mut t = Table::new(&["z", "f_k", "s_k", "limit_pdf", "abs_error"]);
    for i in 0..r.z_grid.len() {
        t.push(vec![
            r.z_grid[i].into(),
            r.f_k[i].into(),
            r.s_k[i].into(),
            r.limit_pdf[i].into(),
            r.pointwise_error[i].into(),
        ]);
    }
    Ok(t)
}

pub fn dance(a: &DanceArgs) -> Outcome {
    let mut t = Table::new(&["k", "z", "f_k", "s_k", "mass_left_of_zero", "sup_error"]);
    for &k in &a.ks.0 {
        let r = evaluate(&a.dist, k, a.grid)?;
        let mass = mass_left_of_zero(&a.dist, k)?;
        let sup = r.sup_error();
        for i in 0..r.z_grid.len() {
            t.push(vec![
                k.into(),
                r.z_grid[i].into(),
                r.f_k[i].into(),
                r.s_k[i].into(),
                mass.into(),
                sup.into(),
            ]);
        }
    }
    Ok(t)
}

pub fn converge(a: &ConvergeArgs) -> Outcome {
    let ks = &a.ks.0;
    if ks.iter().any(|&k| k < 2) || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(
            "--ks must be ascending with every k >= 2".into(),
        ));
    }
    if a.grid < 64 {
        return Err(CliError::Usage(format!(
            "--grid must be >= 64, got {}",
            a.grid
        )));
    }
    let report = convergence_report(&a.dist, ks, a.grid)?;
    let series = if a.dist.is_bounded() {
        Some(expand_density(&a.dist, chebpush::spectral::DEFAULT_ORDER)?)
    } else {
        None
    };
    let z = cos_grid(a.grid)?;
    let mut t = Table::new(&[
        "record",
        "k",
        "sup_error",
        "asymptotic_prediction_error",
        "fitted_order",
        "regime",
    ]);
    for (&k, &err) in report.ks.iter().zip(&report.sup_errors) {
        let predicted = match &series {
            Some(s) => Some(asymptotic_error(&a.dist, s, k, &z)?),
            None => None,
        };
        t.push(vec![
            "point".into(),
            k.into(),
            err.into(),
            predicted.into(),
            Cell::Empty,
            report.regime.label().into(),
        ]);
    }
    t.push(vec![
        "fit".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        report.fitted_order.into(),
        report.regime.label().into(),
    ]);
    Ok(t)
}

fn asymptotic_error(d: &Density, series: &ChebSeries, k: u32, z: &[f64]) -> Result<f64, Error> {
    z.iter().try_fold(0.0_f64, |worst, &zi| {
        let exact = s_k(d, k, zi)?;
        let approx = asymptotic_s_k(series, k, zi)?;
        Ok(worst.max((exact - approx).abs()))
    })
}

pub fn expand(a: &ExpandArgs) -> Outcome {
    let series = expand_density(&a.dist, a.order)?;
    let mut t = Table::new(&["record", "l", "value"]);
    for (l, &mu) in series.coeffs().iter().enumerate() {
        t.push(vec!["coeff".into(), l.into(), mu.into()]);
    }
    t.push(vec![
        "normalization_residual".into(),
        Cell::Empty,
        series.normalization_residual().into(),
    ]);
    t.push(vec![
        "even_moment_sum".into(),
        Cell::Empty,
        series.even_moment_sum().into(),
    ]);
    if !series.decay_reached() {
        eprintln!(
            "warning: coefficients of `{}` have not decayed by order {}",
            a.dist,
            series.order()
        );
        t.push(vec![
            "decay_warning".into(),
            series.order().into(),
            Cell::Empty,
        ]);
    }
    Ok(t)
}

pub fn mc(a: &McArgs) -> Outcome {
    if a.n < 100 {
        return Err(CliError::Usage(format!("--n must be >= 100, got {}", a.n)));
    }
    if a.bins < 4 {
        return Err(CliError::Usage(format!(
            "--bins must be >= 4, got {}",
            a.bins
        )));
    }
    let d = &a.dist;
    let k = a.k;
    let pushed = push_samples(&sample(d, a.n, a.seed)?, k);
    let exact = ks_statistic(&pushed, |z| pushforward_cdf(d, k, z).unwrap_or(f64::NAN))?;
    let limit = ks_statistic(&pushed, |z| Density::Arcsine.cdf(z))?;
    let hist = histogram(&pushed, a.bins)?;

    let mut t = Table::new(&[
        "record",
        "reference",
        "k",
        "n",
        "seed",
        "statistic",
        "threshold",
        "pass",
        "bin_lo",
        "bin_hi",
        "density",
        "exact_density",
    ]);
    for (reference, ks) in [("exact", exact), ("arcsine", limit)] {
        t.push(vec![
            "ks".into(),
            reference.into(),
            k.into(),
            a.n.into(),
            a.seed.into(),
            ks.statistic.into(),
            ks.threshold.into(),
            ks.pass.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    let width = hist.bin_width();
    for (i, &density) in hist.density.iter().enumerate() {
        let (lo, hi) = (hist.edges[i], hist.edges[i + 1]);
        let exact_density = (pushforward_cdf(d, k, hi)? - pushforward_cdf(d, k, lo)?) / width;
        t.push(vec![
            "histogram".into(),
            Cell::Empty,
            k.into(),
            a.n.into(),
            a.seed.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            lo.into(),
            hi.into(),
            density.into(),
            exact_density.into(),
        ]);
    }
    Ok(t)
}

pub fn invariance(a: &InvarianceArgs) -> Outcome {
    let mut t = Table::new(&["k", "max_deviation"]);
    for k in 1..=a.kmax {
        t.push(vec![
            k.into(),
            evaluate(&a.dist, k, a.grid)?.sup_error().into(),
        ]);
    }
    Ok(t)
}
