//! Distribution of `T_k(X)` for `X` on `[-1, 1]`.
//!
//! With `Θ = arccos X` and `Ψ_k = kΘ`, `T_k(X) = cos Ψ_k`. The event
//! `cos Ψ_k ≤ z` splits into disjoint `Ψ_k`-intervals
//! `[2π(j-1) + β, 2πj - β]` with `β = arccos z`, plus a tail interval
//! `[2πm + β, kπ]` when `k = 2m + 1` is odd. Differentiating gives
//!
//! ```text
//! f_k(z) = S_k(z) / √(1 - z²)
//! S_k(z) = Σ_{j=1}^{m} f_Ψ(2πj - β) + f_Ψ(2π(j-1) + β)   [+ f_Ψ(2πm + β) for odd k]
//! ```
//!
//! `S_k` is bounded and tends to `1/π` pointwise; every error measure in
//! this module is taken on `S_k`, not on the singular `f_k`.

use std::f64::consts::{FRAC_1_PI, PI};

use rayon::prelude::*;

use crate::densities::Distribution;
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::spectral::ChebSeries;

/// Distance of the evaluation grid from the endpoints, in angle.
pub const GRID_EPSILON: f64 = 1e-3;

pub const DEFAULT_GRID: usize = 201;

/// Errors below this are treated as the invariant (exact) regime.
pub const INVARIANT_TOLERANCE: f64 = 1e-13;

const ANGLE_SLACK: f64 = 1e-12;
const RESONANCE_GUARD: f64 = 1e-12;

/// Arcsine density `1/(π√(1-z²))`, the limit of `f_k`.
pub fn limit_pdf(z: f64) -> f64 {
    FRAC_1_PI / ((1.0 - z) * (1.0 + z)).sqrt()
}

fn check_degree(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree k must be at least 1".into()));
    }
    Ok(())
}

fn check_open_unit(z: f64) -> Result<f64> {
    if z.is_nan() || z <= -1.0 || z >= 1.0 {
        return Err(Error::domain("z", z, "(-1, 1)"));
    }
    Ok(z)
}

/// Density of `Θ = arccos X`: `f_X(cos θ) sin θ`.
pub fn theta_pdf<D: Distribution + ?Sized>(d: &D, theta: f64) -> Result<f64> {
    if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&theta) {
        return Err(Error::domain("theta", theta, "[0, π]"));
    }
    Ok(d.angle_pdf(theta.clamp(0.0, PI)))
}

/// Density of `Ψ_k = k arccos X`: `f_Θ(ψ/k)/k`.
pub fn psi_pdf<D: Distribution + ?Sized>(d: &D, k: u32, psi: f64) -> Result<f64> {
    check_degree(k)?;
    let kf = f64::from(k);
    if psi.is_nan() || psi < -ANGLE_SLACK * kf || psi > kf * (PI + ANGLE_SLACK) {
        return Err(Error::domain("psi", psi, "[0, kπ]"));
    }
    Ok(psi_pdf_unchecked(d, kf, psi))
}

#[inline]
fn psi_pdf_unchecked<D: Distribution + ?Sized>(d: &D, k: f64, psi: f64) -> f64 {
    d.angle_pdf((psi / k).clamp(0.0, PI)) / k
}

/// `S_k` as a function of `β = arccos z ∈ [0, π]`.
///
/// Summation order is fixed (ascending `j`, then the odd tail) so that the
/// value is reproducible regardless of how a grid is scheduled.
pub fn s_k_angle<D: Distribution + ?Sized>(d: &D, k: u32, beta: f64) -> f64 {
    let kf = f64::from(k);
    let m = k / 2;
    let two_pi = 2.0 * PI;
    let mut sum = 0.0;
    for j in 1..=m {
        let jf = f64::from(j);
        sum += psi_pdf_unchecked(d, kf, two_pi * jf - beta);
        sum += psi_pdf_unchecked(d, kf, two_pi * (jf - 1.0) + beta);
    }
    if k % 2 == 1 {
        sum += psi_pdf_unchecked(d, kf, two_pi * f64::from(m) + beta);
    }
    sum
}

/// `S_k(z) = √(1-z²) f_k(z)`.
pub fn s_k<D: Distribution + ?Sized>(d: &D, k: u32, z: f64) -> Result<f64> {
    check_degree(k)?;
    let z = check_open_unit(z)?;
    Ok(s_k_angle(d, k, z.acos()))
}

/// Exact density of `T_k(X)` at `z ∈ (-1, 1)`.
pub fn pushforward_pdf<D: Distribution + ?Sized>(d: &D, k: u32, z: f64) -> Result<f64> {
    let s = s_k(d, k, z)?;
    Ok(s / ((1.0 - z) * (1.0 + z)).sqrt())
}

/// Exact cdf of `T_k(X)` at `z ∈ [-1, 1]`, summed over the disjoint
/// `Ψ_k`-intervals with `P(Ψ_k ≤ ψ) = 1 - F_X(cos(ψ/k))`.
pub fn pushforward_cdf<D: Distribution + ?Sized>(d: &D, k: u32, z: f64) -> Result<f64> {
    check_degree(k)?;
    let z = crate::chebpoly::clamp_unit(z)?;
    let beta = z.acos();
    let kf = f64::from(k);
    let m = k / 2;
    let two_pi = 2.0 * PI;
    // 1 - F_Ψ(ψ)
    let upper = |psi: f64| d.cdf((psi / kf).clamp(0.0, PI).cos());
    let mut total = 0.0;
    for j in 1..=m {
        let jf = f64::from(j);
        total += upper(two_pi * (jf - 1.0) + beta) - upper(two_pi * jf - beta);
    }
    if k % 2 == 1 {
        // F_Ψ(kπ) - F_Ψ(2πm + β)
        total += upper(two_pi * f64::from(m) + beta);
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Per-moment kernel `C_l(k, β)`, the contribution of `μ_l T_l` to `S_k` for
/// even `k`, in closed form.
///
/// * `l = 0`: `2cos((π-β)/k) / (k sin(π/k))`
/// * `l` odd: `0` (the terms cancel pairwise across `j`)
/// * `l ≥ 2` even: a four-sine bracket over `2k sin(π(l+1)/k) sin(π(1-l)/k)`
///
/// When a denominator sine vanishes the direct sum is used for that `l`.
pub fn closed_form_term(l: usize, k: u32, beta: f64) -> f64 {
    let kf = f64::from(k);
    if l == 0 {
        return 2.0 * ((PI - beta) / kf).cos() / (kf * (PI / kf).sin());
    }
    if l % 2 == 1 {
        // cos(lπ/2)² = 0
        return 0.0;
    }
    let lf = l as f64;
    let s_plus = (PI * (lf + 1.0) / kf).sin();
    let s_minus = (PI * (1.0 - lf) / kf).sin();
    if s_plus.abs() < RESONANCE_GUARD || s_minus.abs() < RESONANCE_GUARD {
        return direct_term(l, k, beta);
    }
    let bracket = ((2.0 * PI + (lf - 1.0) * beta) / kf).sin()
        + ((2.0 * PI * lf + (1.0 - lf) * beta) / kf).sin()
        + ((2.0 * PI - (lf + 1.0) * beta) / kf).sin()
        + ((-2.0 * PI * lf + (lf + 1.0) * beta) / kf).sin();
    bracket / (2.0 * kf * s_plus * s_minus)
}

/// `C_l(k, β)` by direct summation over `j`:
/// `(1/k) Σ_j sin(a_j) cos(l a_j) + sin(b_j) cos(l b_j)` with
/// `a_j = (2πj - β)/k`, `b_j = (2π(j-1) + β)/k`.
pub fn direct_term(l: usize, k: u32, beta: f64) -> f64 {
    let kf = f64::from(k);
    let lf = l as f64;
    let mut sum = 0.0;
    for j in 1..=k / 2 {
        let jf = f64::from(j);
        let a = (2.0 * PI * jf - beta) / kf;
        let b = (2.0 * PI * (jf - 1.0) + beta) / kf;
        sum += a.sin() * (lf * a).cos() + b.sin() * (lf * b).cos();
    }
    sum / kf
}

fn check_even(k: u32) -> Result<()> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "closed-form S_k needs even k >= 2, got {k}"
        )));
    }
    Ok(())
}

/// `S_k(z) = Σ_l μ_l C_l(k, arccos z)` from a Chebyshev expansion.
pub fn closed_form_s_k(series: &ChebSeries, k: u32, z: f64) -> Result<f64> {
    check_even(k)?;
    let beta = crate::chebpoly::clamp_unit(z)?.acos();
    Ok(series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(l, mu)| mu * closed_form_term(l, k, beta))
        .sum())
}

/// Large-`k` expansion
/// `S_k ≈ 1/π + (π/3 - (π - arccos z)²/π) Σ_l μ_{2l} / k²`.
pub fn asymptotic_s_k(series: &ChebSeries, k: u32, z: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "asymptotic S_k needs k >= 2, got {k}"
        )));
    }
    let beta = crate::chebpoly::clamp_unit(z)?.acos();
    Ok(asymptotic_from_moment(series.even_moment_sum(), k, beta))
}

fn asymptotic_from_moment(even_moments: f64, k: u32, beta: f64) -> f64 {
    let kf = f64::from(k);
    let u = PI - beta;
    FRAC_1_PI + (PI / 3.0 - u * u / PI) * even_moments / (kf * kf)
}

/// Angles `β_j` evenly spaced on `[ε, π - ε]`, ascending.
pub fn angle_grid(n: usize, eps: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs >= 2 points, got {n}"
        )));
    }
    let span = PI - 2.0 * eps;
    Ok((0..n)
        .map(|j| eps + span * j as f64 / (n - 1) as f64)
        .collect())
}

/// Evaluation grid `z_j = cos β_j` in ascending `z`, excluding a
/// [`GRID_EPSILON`] angular neighbourhood of `±1`.
pub fn cos_grid(n: usize) -> Result<Vec<f64>> {
    let mut betas = angle_grid(n, GRID_EPSILON)?;
    betas.reverse();
    Ok(betas.into_iter().map(f64::cos).collect())
}

/// Exact pushforward on a grid, with the limit law for comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct PushforwardResult {
    pub k: u32,
    pub z_grid: Vec<f64>,
    pub f_k: Vec<f64>,
    pub s_k: Vec<f64>,
    pub limit_pdf: Vec<f64>,
    /// `|S_k(z) - 1/π|`
    pub pointwise_error: Vec<f64>,
}

impl PushforwardResult {
    pub fn sup_error(&self) -> f64 {
        self.pointwise_error.iter().copied().fold(0.0, f64::max)
    }
}

pub fn evaluate_on<D: Distribution + ?Sized>(
    d: &D,
    k: u32,
    z_grid: Vec<f64>,
) -> Result<PushforwardResult> {
    check_degree(k)?;
    let s_values = z_grid
        .par_iter()
        .map(|&z| s_k(d, k, z))
        .collect::<Result<Vec<f64>>>()?;
    let f_k = z_grid
        .iter()
        .zip(&s_values)
        .map(|(&z, &s)| s / ((1.0 - z) * (1.0 + z)).sqrt())
        .collect();
    let limit = z_grid.iter().map(|&z| limit_pdf(z)).collect();
    let pointwise_error = s_values.iter().map(|s| (s - FRAC_1_PI).abs()).collect();
    Ok(PushforwardResult {
        k,
        z_grid,
        f_k,
        s_k: s_values,
        limit_pdf: limit,
        pointwise_error,
    })
}

/// [`evaluate_on`] over the default cos-spaced grid of `grid` points.
pub fn evaluate<D: Distribution + ?Sized>(d: &D, k: u32, grid: usize) -> Result<PushforwardResult> {
    evaluate_on(d, k, cos_grid(grid)?)
}

/// `max_z |S_k(z) - 1/π|` over the cos-spaced grid.
pub fn sup_error<D: Distribution + ?Sized>(d: &D, k: u32, grid: usize) -> Result<f64> {
    if grid < 64 {
        return Err(Error::InvalidArgument(format!(
            "sup_error grid must be >= 64, got {grid}"
        )));
    }
    Ok(evaluate(d, k, grid)?.sup_error())
}

/// How a convergence report should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceRegime {
    /// Errors are at rounding level: the input is the invariant law.
    Invariant,
    /// Continuous input, covered by the convergence theorem.
    Proven,
    /// Discontinuous input; the rate is observed, not guaranteed.
    Empirical,
}

impl ConvergenceRegime {
    pub fn label(&self) -> &'static str {
        match self {
            ConvergenceRegime::Invariant => "invariant",
            ConvergenceRegime::Proven => "quadratic",
            ConvergenceRegime::Empirical => "empirical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub ks: Vec<u32>,
    pub sup_errors: Vec<f64>,
    /// Least-squares slope of `log(error)` against `log(k)`; `None` with
    /// fewer than three `k` or in the invariant regime.
    pub fitted_order: Option<f64>,
    pub regime: ConvergenceRegime,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Sup-norm errors for each `k` in `ks` with the fitted log-log order.
pub fn convergence_report<D: Distribution + ?Sized>(
    d: &D,
    ks: &[u32],
    grid: usize,
) -> Result<ConvergenceReport> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("no k values given".into()));
    }
    if ks.iter().any(|&k| k < 2) || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "k values must be ascending and >= 2".into(),
        ));
    }
    let sup_errors = ks
        .iter()
        .map(|&k| sup_error(d, k, grid))
        .collect::<Result<Vec<f64>>>()?;
    let regime = if sup_errors.iter().all(|&e| e < INVARIANT_TOLERANCE) {
        ConvergenceRegime::Invariant
    } else if d.is_discontinuous() {
        ConvergenceRegime::Empirical
    } else {
        ConvergenceRegime::Proven
    };
    let fitted_order = if regime == ConvergenceRegime::Invariant || ks.len() < 3 {
        None
    } else {
        let xs: Vec<f64> = ks.iter().map(|&k| f64::from(k)).collect();
        log_log_slope(&xs, &sup_errors)
    };
    Ok(ConvergenceReport {
        ks: ks.to_vec(),
        sup_errors,
        fitted_order,
        regime,
    })
}

/// `P(T_k(X) < 0) = F_k(0)`.
pub fn mass_left_of_zero<D: Distribution + ?Sized>(d: &D, k: u32) -> Result<f64> {
    pushforward_cdf(d, k, 0.0)
}

/// `∫_{-1}^{1} f_k(z) dz`, computed as `∫_0^π S_k(cos β) dβ` so that the
/// endpoint singularities disappear.
pub fn total_mass<D: Distribution + ?Sized>(d: &D, k: u32) -> Result<f64> {
    check_degree(k)?;
    Ok(integrate_adaptive(|b| s_k_angle(d, k, b), 0.0, PI, 1e-11, 20_000).value)
}
