//! Catalog of continuous distributions on `[-1, 1]`.
//!
//! | selector         | pdf                                   |
//! |------------------|---------------------------------------|
//! | `arcsine`        | `1/(π√(1-x²))`, the limit law         |
//! | `uniform`        | `1/2`                                 |
//! | `ramp`           | `(1+x)/2`                             |
//! | `uniform01`      | `1` on `(0, 1)`, else `0` (discontinuous) |
//! | `gauss:MU,SIGMA` | Gaussian restricted to `[-1, 1]`, renormalized |

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::montecarlo::SampleBatch;
use crate::quadrature::integrate_adaptive;
use crate::rng::UniformStream;

/// A continuous distribution supported on `[-1, 1]`.
pub trait Distribution: Send + Sync {
    /// Selector string identifying the distribution.
    fn name(&self) -> String;

    fn pdf(&self, x: f64) -> f64;

    fn cdf(&self, x: f64) -> f64;

    /// Inverse of [`Distribution::cdf`] on `(0, 1)`.
    fn inverse_cdf(&self, u: f64) -> f64;

    fn support(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    /// `true` when the pdf has jump discontinuities inside the support.
    fn is_discontinuous(&self) -> bool {
        false
    }

    /// `false` when the pdf is unbounded on the closed support.
    fn is_bounded(&self) -> bool {
        true
    }

    /// Density of `Θ = arccos X` at `θ ∈ [0, π]`, `f_X(cos θ) sin θ`.
    fn angle_pdf(&self, theta: f64) -> f64 {
        self.pdf(theta.cos()) * theta.sin()
    }
}

/// Gaussian `N(mu, sigma²)` conditioned on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedGaussian {
    mu: f64,
    sigma: f64,
    lower_tail: f64,
    mass: f64,
}

/// Standard normal cdf.
fn phi(t: f64) -> f64 {
    0.5 * erfc(-t / SQRT_2)
}

impl TruncatedGaussian {
    pub const DEFAULT_MU: f64 = 0.0;
    pub const DEFAULT_SIGMA: f64 = 0.25;

    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mu must be finite, got {mu}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > 0, got {sigma}"
            )));
        }
        let lower_tail = phi((-1.0 - mu) / sigma);
        let mass = phi((1.0 - mu) / sigma) - lower_tail;
        if mass.is_nan() || mass <= 1e-300 {
            return Err(Error::InvalidParameter(format!(
                "N({mu}, {sigma}²) has no mass on [-1, 1]"
            )));
        }
        Ok(Self {
            mu,
            sigma,
            lower_tail,
            mass,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// The density catalog. Values are immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Arcsine,
    Uniform,
    LinearRamp,
    Uniform01,
    TruncatedGaussian(TruncatedGaussian),
}

impl Density {
    /// The Gaussian used by the oscillation ("dance") experiment.
    pub fn default_gaussian() -> Self {
        Density::TruncatedGaussian(
            TruncatedGaussian::new(
                TruncatedGaussian::DEFAULT_MU,
                TruncatedGaussian::DEFAULT_SIGMA,
            )
            .expect("default parameters are valid"),
        )
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        TruncatedGaussian::new(mu, sigma).map(Density::TruncatedGaussian)
    }

    /// Every catalog entry, with the Gaussian at its default parameters.
    pub fn catalog() -> Vec<Density> {
        vec![
            Density::Arcsine,
            Density::Uniform,
            Density::LinearRamp,
            Density::Uniform01,
            Density::default_gaussian(),
        ]
    }
}

/// Builds a catalog density from a name and a parameter map.
///
/// Gaussian parameters are `mu` and `sigma`; missing ones take the defaults
/// `mu = 0`, `sigma = 0.25`.
pub fn make_density(name: &str, params: &BTreeMap<String, f64>) -> Result<Density> {
    let no_params = |d: Density| {
        if let Some(key) = params.keys().next() {
            return Err(Error::InvalidParameter(format!(
                "`{name}` takes no parameters, got `{key}`"
            )));
        }
        Ok(d)
    };
    match name {
        "arcsine" => no_params(Density::Arcsine),
        "uniform" => no_params(Density::Uniform),
        "linear_ramp" | "ramp" => no_params(Density::LinearRamp),
        "uniform01" => no_params(Density::Uniform01),
        "truncated_gaussian" | "gauss" => {
            if let Some(key) = params.keys().find(|k| *k != "mu" && *k != "sigma") {
                return Err(Error::InvalidParameter(format!(
                    "unknown Gaussian parameter `{key}`"
                )));
            }
            let mu = params
                .get("mu")
                .copied()
                .unwrap_or(TruncatedGaussian::DEFAULT_MU);
            let sigma = params
                .get("sigma")
                .copied()
                .unwrap_or(TruncatedGaussian::DEFAULT_SIGMA);
            Density::gaussian(mu, sigma)
        }
        other => Err(Error::UnknownDensity(other.to_string())),
    }
}

impl FromStr for Density {
    type Err = Error;

    /// Parses `arcsine | uniform | ramp | uniform01 | gauss:MU,SIGMA`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((head, args)) = s.split_once(':') else {
            return make_density(s, &BTreeMap::new());
        };
        if head != "gauss" {
            return Err(Error::UnknownDensity(s.to_string()));
        }
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let [mu, sigma] = parts.as_slice() else {
            return Err(Error::InvalidParameter(format!(
                "expected gauss:MU,SIGMA, got `{s}`"
            )));
        };
        let parse = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("`{v}` is not a number")))
        };
        Density::gaussian(parse(mu)?, parse(sigma)?)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Arcsine => f.write_str("arcsine"),
            Density::Uniform => f.write_str("uniform"),
            Density::LinearRamp => f.write_str("ramp"),
            Density::Uniform01 => f.write_str("uniform01"),
            Density::TruncatedGaussian(g) => write!(f, "gauss:{},{}", g.mu, g.sigma),
        }
    }
}

const BISECTION_TOL: f64 = 1e-12;

impl Distribution for Density {
    fn name(&self) -> String {
        self.to_string()
    }

    fn pdf(&self, x: f64) -> f64 {
        if !(-1.0..=1.0).contains(&x) {
            return 0.0;
        }
        match self {
            Density::Arcsine => FRAC_1_PI / ((1.0 - x) * (1.0 + x)).sqrt(),
            Density::Uniform => 0.5,
            Density::LinearRamp => 0.5 * (1.0 + x),
            Density::Uniform01 => {
                if x > 0.0 && x < 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Density::TruncatedGaussian(g) => {
                let t = (x - g.mu) / g.sigma;
                (-0.5 * t * t).exp() / (g.sigma * (2.0 * PI).sqrt() * g.mass)
            }
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let v = match self {
            Density::Arcsine => 1.0 - x.acos() * FRAC_1_PI,
            Density::Uniform => 0.5 * (1.0 + x),
            Density::LinearRamp => 0.25 * (1.0 + x) * (1.0 + x),
            Density::Uniform01 => x.clamp(0.0, 1.0),
            Density::TruncatedGaussian(g) => (phi((x - g.mu) / g.sigma) - g.lower_tail) / g.mass,
        };
        v.clamp(0.0, 1.0)
    }

    fn inverse_cdf(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match self {
            Density::Arcsine => -(PI * u).cos(),
            Density::Uniform => 2.0 * u - 1.0,
            Density::LinearRamp => 2.0 * u.sqrt() - 1.0,
            Density::Uniform01 => u,
            Density::TruncatedGaussian(_) => {
                let (mut lo, mut hi) = (-1.0f64, 1.0f64);
                while hi - lo > BISECTION_TOL {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < u {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    fn is_discontinuous(&self) -> bool {
        matches!(self, Density::Uniform01)
    }

    fn is_bounded(&self) -> bool {
        !matches!(self, Density::Arcsine)
    }

    fn angle_pdf(&self, theta: f64) -> f64 {
        match self {
            // f_X(cos θ) sin θ = 1/π identically; evaluating the product
            // directly loses digits to cancellation in 1 - cos²θ.
            Density::Arcsine => {
                if (0.0..=PI).contains(&theta) {
                    FRAC_1_PI
                } else {
                    0.0
                }
            }
            _ => self.pdf(theta.cos()) * theta.sin(),
        }
    }
}

const SAMPLE_CHUNK: usize = 4096;

/// `n` i.i.d. draws of `d` by inverse-cdf over the counter-based stream
/// keyed by `seed`. Output is bit-identical for equal `(seed, n)`.
pub fn sample<D: Distribution + ?Sized>(d: &D, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be at least 1".into(),
        ));
    }
    let stream = UniformStream::new(seed);
    let mut values = vec![0.0; n];
    values
        .par_chunks_mut(SAMPLE_CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            stream.fill_uniform((c * SAMPLE_CHUNK) as u64, chunk);
            for v in chunk.iter_mut() {
                *v = d.inverse_cdf(*v);
            }
        });
    Ok(SampleBatch::new(values, seed, 0, d.name()))
}

/// `∫_{z0}^{z1} pdf`, integrated in the angle `x = cos θ` so that
/// `1/√(1-x²)` endpoint singularities become bounded integrands.
fn mass_between<D: Distribution + ?Sized>(d: &D, z0: f64, z1: f64) -> f64 {
    let g = |t: f64| {
        let v = d.pdf(t.cos()) * t.sin();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_adaptive(g, z1.acos(), z0.acos(), 1e-13, 4000).value
}

/// Max over a uniform grid of `|cdf(z) - ∫_lo^z pdf|`, by adaptive quadrature
/// between consecutive grid points.
pub fn numeric_cdf_check<D: Distribution + ?Sized>(d: &D, grid: usize) -> Result<f64> {
    if grid < 16 {
        return Err(Error::InvalidArgument(format!(
            "grid must be >= 16, got {grid}"
        )));
    }
    let (lo, hi) = d.support();
    let step = (hi - lo) / (grid - 1) as f64;
    let mut acc = 0.0;
    let mut worst = (d.cdf(lo) - 0.0).abs();
    let mut prev = lo;
    for i in 1..grid {
        let z = if i == grid - 1 {
            hi
        } else {
            lo + step * i as f64
        };
        acc += mass_between(d, prev, z);
        worst = worst.max((d.cdf(z) - acc).abs());
        prev = z;
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn catalog_point_values() {
        assert_abs_diff_eq!(Density::Arcsine.pdf(0.0), 1.0 / PI, epsilon = 1e-16);
        assert_eq!(Density::Uniform.cdf(0.0), 0.5);
        assert_eq!(Density::Uniform01.pdf(-0.5), 0.0);
        assert_eq!(Density::Uniform01.pdf(0.5), 1.0);
        assert_eq!(Density::Arcsine.cdf(0.0), 0.5);
    }

    #[test]
    fn arcsine_pdf_is_symmetric() {
        for i in 0..1000 {
            let z = -0.999 + 1.998 * f64::from(i) / 999.0;
            let (a, b) = (Density::Arcsine.pdf(z), Density::Arcsine.pdf(-z));
            assert!((a - b).abs() <= 1e-14 * a.max(1.0));
        }
    }

    #[test]
    fn selector_round_trip() {
        for s in [
            "arcsine",
            "uniform",
            "ramp",
            "uniform01",
            "gauss:0,0.25",
            "gauss:0.3,0.5",
        ] {
            let d: Density = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!(
            " gauss: 0 , 0.25 ".parse::<Density>().unwrap(),
            Density::default_gaussian()
        );
    }

    #[test]
    fn selector_errors() {
        assert!(matches!(
            "cauchy".parse::<Density>(),
            Err(Error::UnknownDensity(_))
        ));
        assert!(matches!(
            "gauss:0".parse::<Density>(),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            "gauss:0,-1".parse::<Density>(),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            "gauss:0,0".parse::<Density>(),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            "gauss:a,1".parse::<Density>(),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            "uniform:1".parse::<Density>(),
            Err(Error::UnknownDensity(_))
        ));
    }

    #[test]
    fn make_density_by_name() {
        let mut p = BTreeMap::new();
        assert_eq!(
            make_density("linear_ramp", &p).unwrap(),
            Density::LinearRamp
        );
        assert_eq!(
            make_density("truncated_gaussian", &p).unwrap(),
            Density::default_gaussian()
        );
        p.insert("sigma".to_string(), 0.0);
        assert!(make_density("truncated_gaussian", &p).is_err());
        assert!(make_density("uniform", &p).is_err());
        assert!(make_density("beta", &BTreeMap::new()).is_err());
    }

    #[test]
    fn cdf_endpoints_and_monotonicity() {
        for d in Density::catalog() {
            assert_eq!(d.cdf(-1.0), 0.0, "{d}");
            assert_eq!(d.cdf(1.0), 1.0, "{d}");
            let mut prev = 0.0;
            for i in 0..=2000 {
                let z = -1.0 + 2.0 * f64::from(i) / 2000.0;
                let c = d.cdf(z);
                assert!(c >= prev, "{d} not monotone at {z}");
                assert!(d.pdf(z) >= 0.0);
                prev = c;
            }
        }
    }

    #[test]
    fn inverse_cdf_inverts_cdf() {
        for d in Density::catalog() {
            for i in 1..100 {
                let u = f64::from(i) / 100.0;
                let x = d.inverse_cdf(u);
                assert_abs_diff_eq!(d.cdf(x), u, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        assert!(numeric_cdf_check(&Density::Arcsine, 64).unwrap() < 1e-8);
        assert!(numeric_cdf_check(&Density::Uniform, 64).unwrap() < 1e-12);
        assert!(numeric_cdf_check(&Density::default_gaussian(), 64).unwrap() < 1e-8);
        for d in Density::catalog() {
            assert!(numeric_cdf_check(&d, 101).unwrap() < 1e-7, "{d}");
        }
        assert!(numeric_cdf_check(&Density::Uniform, 8).is_err());
    }

    #[test]
    fn pdf_integrates_to_one() {
        for d in Density::catalog() {
            let total = mass_between(&d, -1.0, 1.0);
            assert!((total - 1.0).abs() <= 1e-8, "{d}: {total}");
        }
    }

    #[test]
    fn arcsine_angle_density_is_uniform() {
        for i in 0..=100 {
            let th = PI * f64::from(i) / 100.0;
            assert_eq!(Density::Arcsine.angle_pdf(th), 1.0 / PI);
        }
        // generic route agrees away from the endpoints
        let generic = Density::Arcsine.pdf(1.0f64.cos()) * 1.0f64.sin();
        assert_abs_diff_eq!(generic, 1.0 / PI, epsilon = 1e-14);
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = Density::default_gaussian();
        let a = sample(&d, 1000, 99).unwrap();
        let b = sample(&d, 1000, 99).unwrap();
        assert_eq!(a, b);
        assert!(sample(&d, 0, 1).is_err());
    }

    #[test]
    fn sampling_moments() {
        let n = 100_000;
        let u = sample(&Density::Uniform, n, 7).unwrap();
        let mean = u.values().iter().sum::<f64>() / n as f64;
        assert!(mean.abs() <= 0.02, "mean {mean}");

        let a = sample(&Density::Arcsine, n, 7).unwrap();
        let below = a.values().iter().filter(|&&v| v < 0.0).count() as f64 / n as f64;
        assert!((0.495..=0.505).contains(&below), "fraction {below}");
    }
}
