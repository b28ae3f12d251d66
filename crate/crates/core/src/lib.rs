//! Exact and asymptotic distribution of `T_k(X)`, the `k`-th Chebyshev
//! polynomial of a random variable `X` on `[-1, 1]`, and its convergence to
//! the arcsine law `1/(π√(1-z²))` as `k → ∞`.
//!
//! * [`chebpoly`]: Chebyshev kernel, integrals, trigonometric sums.
//! * [`densities`]: input distributions and inverse-cdf sampling.
//! * [`spectral`]: Chebyshev-series expansion of densities.
//! * [`pushforward`]: exact pdf/cdf of `T_k(X)`, closed-form and asymptotic
//!   `S_k`, convergence diagnostics.
//! * [`montecarlo`]: simulation, KS statistics, histograms.

pub mod chebpoly;
pub mod densities;
mod error;
pub mod montecarlo;
pub mod pushforward;
pub mod quadrature;
pub mod rng;
pub mod spectral;

pub use densities::{Density, Distribution};
pub use error::{Error, Result};
pub use montecarlo::{KsResult, SampleBatch};
pub use pushforward::{ConvergenceRegime, ConvergenceReport, PushforwardResult};
pub use spectral::ChebSeries;
