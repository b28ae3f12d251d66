//! Chebyshev-series expansion of densities, `f(x) = Σ_l μ_l T_l(x)`.
//!
//! `μ_0` is the literal degree-0 coefficient (no halving), so the
//! normalization `∫f = 1` reads `2μ_0 + Σ_{l≥2} μ_l ∫T_l = 1`.

use crate::chebpoly::{cheb_integral, clamp_unit};
use crate::densities::Distribution;
use crate::error::{Error, Result};
use crate::quadrature::gauss_chebyshev_angles;

/// Default truncation order `L`.
pub const DEFAULT_ORDER: usize = 64;

/// The trailing coefficients must fall below this for the expansion to count
/// as converged.
pub const DECAY_TOLERANCE: f64 = 1e-10;

const MIN_NODES: usize = 256;

/// Truncated Chebyshev expansion `μ_0..μ_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
    decay_reached: bool,
}

impl ChebSeries {
    /// Wraps explicit coefficients `μ_0..μ_L`.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least μ_0".into()));
        }
        // the last two coefficients, since symmetric or antisymmetric inputs
        // zero out every other degree
        let decay_reached = coeffs
            .iter()
            .rev()
            .take(2)
            .all(|c| c.abs() < DECAY_TOLERANCE);
        Ok(Self {
            coeffs,
            decay_reached,
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation order `L`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `false` when `max(|μ_{L-1}|, |μ_L|) ≥ DECAY_TOLERANCE`, typical of
    /// non-smooth input.
    pub fn decay_reached(&self) -> bool {
        self.decay_reached
    }

    /// `Σ μ_l T_l(x)` by Clenshaw summation.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let x = clamp_unit(x)?;
        Ok(clenshaw(&self.coeffs, x))
    }

    /// `|1 - (2μ_0 + Σ_{l=2}^{L} μ_l ((-1)^l + 1)/(1 - l²))|`.
    pub fn normalization_residual(&self) -> f64 {
        let mass: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != 1)
            .map(|(l, &mu)| mu * cheb_integral(l as u32))
            .sum();
        (1.0 - mass).abs()
    }

    /// `Σ_{l=0}^{⌊L/2⌋} μ_{2l}`.
    pub fn even_moment_sum(&self) -> f64 {
        self.coeffs.iter().step_by(2).sum()
    }
}

fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + coeffs[0]
}

/// Expands `d.pdf` to order `order` with `max(256, 4(L+1))` Gauss–Chebyshev
/// nodes.
pub fn expand_density<D: Distribution + ?Sized>(d: &D, order: usize) -> Result<ChebSeries> {
    expand_density_with_nodes(d, order, MIN_NODES.max(4 * (order + 1)))
}

/// As [`expand_density`] with an explicit node count.
///
/// `μ_l = (c_l/N) Σ_j f(cos θ_j) cos(l θ_j)`, `c_0 = 1`, `c_l = 2`; the
/// Chebyshev weight is absorbed by the node placement.
pub fn expand_density_with_nodes<D: Distribution + ?Sized>(
    d: &D,
    order: usize,
    nodes: usize,
) -> Result<ChebSeries> {
    if !d.is_bounded() {
        return Err(Error::NotExpandable(d.name()));
    }
    if nodes < order + 1 {
        return Err(Error::InvalidArgument(format!(
            "{nodes} nodes cannot resolve order {order}"
        )));
    }
    let angles = gauss_chebyshev_angles(nodes);
    let values: Vec<f64> = angles.iter().map(|t| d.pdf(t.cos())).collect();
    let n = nodes as f64;
    let coeffs = (0..=order)
        .map(|l| {
            let lf = l as f64;
            let s: f64 = angles
                .iter()
                .zip(&values)
                .map(|(t, f)| f * (lf * t).cos())
                .sum();
            let c = if l == 0 { 1.0 } else { 2.0 };
            c * s / n
        })
        .collect();
    ChebSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::Density;
    use crate::quadrature::integrate_adaptive;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    /// Independent coefficient oracle: `μ_l = c_l/π ∫_0^π f(cos θ) cos(lθ) dθ`
    /// by adaptive Gauss–Kronrod in the angle variable.
    fn coefficient_oracle(d: &Density, l: usize) -> f64 {
        let c = if l == 0 { 1.0 } else { 2.0 };
        let v = integrate_adaptive(
            |t| d.pdf(t.cos()) * (l as f64 * t).cos(),
            0.0,
            PI,
            1e-14,
            2000,
        )
        .value;
        c * v / PI
    }

    #[test]
    fn uniform_has_only_constant_term() {
        let s = expand_density(&Density::Uniform, DEFAULT_ORDER).unwrap();
        assert_abs_diff_eq!(s.coeffs()[0], 0.5, epsilon = 1e-12);
        for &mu in &s.coeffs()[1..] {
            assert!(mu.abs() < 1e-12);
        }
        assert!(s.decay_reached());
        assert!(s.normalization_residual() < 1e-14);
        assert_abs_diff_eq!(s.even_moment_sum(), 0.5, epsilon = 1e-12);
        for x in [-1.0, -0.2, 0.7, 1.0] {
            assert_abs_diff_eq!(s.eval(x).unwrap(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn ramp_is_half_t0_plus_half_t1() {
        let d = Density::LinearRamp;
        let s = expand_density(&d, DEFAULT_ORDER).unwrap();
        assert_abs_diff_eq!(coefficient_oracle(&d, 0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(coefficient_oracle(&d, 1), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.coeffs()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.coeffs()[1], 0.5, epsilon = 1e-12);
        for &mu in &s.coeffs()[2..] {
            assert!(mu.abs() < 1e-12);
        }
        assert!(s.normalization_residual() < 1e-14);
        assert_abs_diff_eq!(s.even_moment_sum(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eval(1.0).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gaussian_coefficients_match_oracle_and_decay() {
        let d = Density::default_gaussian();
        let s = expand_density(&d, DEFAULT_ORDER).unwrap();
        for l in 0..=DEFAULT_ORDER {
            assert_abs_diff_eq!(s.coeffs()[l], coefficient_oracle(&d, l), epsilon = 1e-11);
        }
        for &mu in &s.coeffs()[41..] {
            assert!(mu.abs() < 1e-10);
        }
        assert!(s.decay_reached());
        assert!(s.normalization_residual() < 1e-8);
        assert_abs_diff_eq!(s.eval(0.0).unwrap(), d.pdf(0.0), epsilon = 1e-6);
    }

    #[test]
    fn reconstruction_error_for_smooth_densities() {
        for d in [
            Density::Uniform,
            Density::LinearRamp,
            Density::default_gaussian(),
        ] {
            let s = expand_density(&d, DEFAULT_ORDER).unwrap();
            let worst = (0..=1000)
                .map(|i| -0.99 + 1.98 * f64::from(i) / 1000.0)
                .map(|x| (s.eval(x).unwrap() - d.pdf(x)).abs())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-6, "{d}: {worst}");
        }
    }

    #[test]
    fn doubling_nodes_leaves_coefficients_unchanged() {
        for d in [
            Density::Uniform,
            Density::LinearRamp,
            Density::default_gaussian(),
        ] {
            let a = expand_density_with_nodes(&d, DEFAULT_ORDER, 260).unwrap();
            let b = expand_density_with_nodes(&d, DEFAULT_ORDER, 520).unwrap();
            for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                assert!((x - y).abs() < 1e-12, "{d}");
            }
        }
    }

    #[test]
    fn symmetric_densities_have_no_odd_coefficients() {
        for d in [Density::Uniform, Density::default_gaussian()] {
            let s = expand_density(&d, DEFAULT_ORDER).unwrap();
            for mu in s.coeffs().iter().skip(1).step_by(2) {
                assert!(mu.abs() < 1e-12, "{d}");
            }
        }
    }

    #[test]
    fn discontinuous_input_warns_but_normalizes() {
        let s = expand_density(&Density::Uniform01, DEFAULT_ORDER).unwrap();
        assert!(!s.decay_reached());
        assert!(s.normalization_residual() < 1e-8);
    }

    #[test]
    fn arcsine_is_not_expandable() {
        assert!(matches!(
            expand_density(&Density::Arcsine, 8),
            Err(Error::NotExpandable(_))
        ));
    }

    #[test]
    fn clenshaw_matches_direct_sum() {
        let coeffs = vec![0.3, -0.2, 0.15, 0.05, -0.01];
        let s = ChebSeries::from_coeffs(coeffs.clone()).unwrap();
        for x in [-0.9, -0.1, 0.4, 0.95] {
            let direct: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(l, c)| c * crate::chebpoly::cheb_eval(l as u32, x).unwrap())
                .sum();
            assert_abs_diff_eq!(s.eval(x).unwrap(), direct, epsilon = 1e-14);
        }
        assert!(ChebSeries::from_coeffs(vec![]).is_err());
    }
}
