//! Sampling-based validation of the exact pushforward laws.

use rayon::prelude::*;

use crate::chebpoly::cheb_eval_unchecked;
use crate::error::{Error, Result};

/// One-sample KS critical constant, `α ≈ 0.001`.
pub const KS_CRITICAL: f64 = 1.95;

/// Seeded draws, optionally pushed through `T_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    values: Vec<f64>,
    seed: u64,
    /// Accumulated degree; 0 means untransformed.
    k: u32,
    source: String,
}

impl SampleBatch {
    pub fn new(values: Vec<f64>, seed: u64, k: u32, source: impl Into<String>) -> Self {
        Self {
            values,
            seed,
            k,
            source: source.into(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Applies `T_k` elementwise. Degrees compose multiplicatively, so pushing a
/// batch already at degree `m` yields degree `m·k`.
pub fn push_samples(batch: &SampleBatch, k: u32) -> SampleBatch {
    let values = batch
        .values
        .par_iter()
        .map(|&x| cheb_eval_unchecked(k, x.clamp(-1.0, 1.0)))
        .collect();
    let degree = if batch.k == 0 {
        k
    } else {
        batch.k.saturating_mul(k)
    };
    SampleBatch::new(values, batch.seed, degree, batch.source.clone())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub threshold: f64,
    pub pass: bool,
}

/// `KS_CRITICAL / √n`.
pub fn ks_threshold(n: usize) -> f64 {
    KS_CRITICAL / (n as f64).sqrt()
}

/// One-sample Kolmogorov–Smirnov distance against `cdf`, with the default
/// threshold [`ks_threshold`].
pub fn ks_statistic<F>(batch: &SampleBatch, cdf: F) -> Result<KsResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    ks_statistic_with_threshold(batch, cdf, ks_threshold(batch.n()))
}

pub fn ks_statistic_with_threshold<F>(
    batch: &SampleBatch,
    cdf: F,
    threshold: f64,
) -> Result<KsResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let n = batch.n();
    if n < 100 {
        return Err(Error::InvalidArgument(format!(
            "KS needs n >= 100, got {n}"
        )));
    }
    let mut sorted = batch.values.clone();
    sorted.par_sort_unstable_by(f64::total_cmp);
    let nf = n as f64;
    let statistic = sorted
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / nf - f;
            let below = f - i as f64 / nf;
            above.max(below)
        })
        .reduce(|| 0.0, f64::max);
    Ok(KsResult {
        statistic,
        n,
        threshold,
        pass: statistic < threshold,
    })
}

/// Density-normalized histogram on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }
}

pub fn histogram(batch: &SampleBatch, bins: usize) -> Result<Histogram> {
    if bins < 4 {
        return Err(Error::InvalidArgument(format!(
            "need at least 4 bins, got {bins}"
        )));
    }
    if batch.n() == 0 {
        return Err(Error::InvalidArgument("empty batch".into()));
    }
    let width = 2.0 / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| -1.0 + width * i as f64).collect();
    let mut counts = vec![0u64; bins];
    for &v in &batch.values {
        let idx = (((v + 1.0) / width).floor() as isize).clamp(0, bins as isize - 1) as usize;
        counts[idx] += 1;
    }
    let scale = 1.0 / (batch.n() as f64 * width);
    let density = counts.iter().map(|&c| c as f64 * scale).collect();
    Ok(Histogram {
        edges,
        density,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{sample, Density, Distribution};
    use crate::pushforward::{pushforward_cdf, pushforward_pdf};
    use crate::quadrature::integrate_adaptive;

    #[test]
    fn push_by_one_is_identity() {
        let b = sample(&Density::default_gaussian(), 1000, 3).unwrap();
        let p = push_samples(&b, 1);
        assert_eq!(p.values(), b.values());
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn zeros_go_to_minus_one_under_t2() {
        let b = SampleBatch::new(vec![0.0; 50], 0, 0, "zeros");
        let p = push_samples(&b, 2);
        assert!(p.values().iter().all(|&v| v == -1.0));
    }

    #[test]
    fn pushes_compose() {
        let b = sample(&Density::Uniform, 10_000, 11).unwrap();
        for (m, n) in [(2u32, 3u32), (4, 8), (7, 5)] {
            let two_step = push_samples(&push_samples(&b, m), n);
            let one_step = push_samples(&b, m * n);
            assert_eq!(two_step.k(), m * n);
            for (a, c) in two_step.values().iter().zip(one_step.values()) {
                assert!((a - c).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn ks_requires_enough_samples() {
        let b = SampleBatch::new(vec![0.0; 99], 0, 0, "x");
        assert!(ks_statistic(&b, |x| x).is_err());
    }

    #[test]
    fn ks_formula_on_tiny_exact_case() {
        // 100 equally spaced points at cell midpoints: D = 1/(2n)
        let values: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let b = SampleBatch::new(values, 0, 0, "grid");
        let r = ks_statistic(&b, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((r.statistic - 0.005).abs() < 1e-15);
        assert!(r.pass);
    }

    #[test]
    fn ks_examples() {
        let n = 1_000_000;
        let u = sample(&Density::Uniform, n, 5).unwrap();
        assert!(ks_statistic(&u, |x| Density::Uniform.cdf(x)).unwrap().pass);

        let pushed = push_samples(&u, 32);
        assert!(
            ks_statistic(&pushed, |x| Density::Arcsine.cdf(x))
                .unwrap()
                .pass
        );

        let pushed = push_samples(&u, 2);
        let r = ks_statistic(&pushed, |x| Density::Arcsine.cdf(x)).unwrap();
        assert!(!r.pass, "{}", r.statistic);
    }

    #[test]
    fn arcsine_is_invariant_in_simulation() {
        let a = sample(&Density::Arcsine, 200_000, 17).unwrap();
        let p = push_samples(&a, 12);
        assert!(ks_statistic(&p, |x| Density::Arcsine.cdf(x)).unwrap().pass);
    }

    #[test]
    fn inverse_cdf_sampling_matches_every_catalog_cdf() {
        let n = 1_000_000;
        let threshold = 2.0 / (n as f64).sqrt() * KS_CRITICAL;
        for d in Density::catalog() {
            let b = sample(&d, n, 2024).unwrap();
            let r = ks_statistic_with_threshold(&b, |x| d.cdf(x), threshold).unwrap();
            assert!(r.pass, "{d}: {}", r.statistic);
        }
    }

    #[test]
    fn pushed_samples_follow_exact_law() {
        let n = 1_000_000;
        for d in Density::catalog() {
            let base = sample(&d, n, 31).unwrap();
            for k in [8u32, 16, 32] {
                let p = push_samples(&base, k);
                let r = ks_statistic(&p, |z| pushforward_cdf(&d, k, z).unwrap()).unwrap();
                assert!(r.pass, "{d} k={k}: {}", r.statistic);
            }
        }
    }

    #[test]
    fn determinism_of_statistics() {
        let run = || {
            let b = push_samples(&sample(&Density::Uniform01, 5000, 9).unwrap(), 8);
            ks_statistic(&b, |z| pushforward_cdf(&Density::Uniform01, 8, z).unwrap()).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn histogram_normalization_and_shape() {
        let u = sample(&Density::Uniform, 200_000, 1).unwrap();
        let h = histogram(&u, 10).unwrap();
        let mass: f64 = h.density.iter().sum::<f64>() * h.bin_width();
        assert!((mass - 1.0).abs() < 1e-12);
        // multinomial bin count sd = √(n p (1-p)), p = 0.1
        let n = 200_000.0;
        let sd = (n * 0.1 * 0.9f64).sqrt() / (n * h.bin_width());
        for &v in &h.density {
            assert!((v - 0.5).abs() < 4.0 * sd, "{v}");
        }

        let a = sample(&Density::Arcsine, 200_000, 1).unwrap();
        let h = histogram(&a, 50).unwrap();
        assert!(h.density[0] > h.density[25]);
        assert!(h.density[49] > h.density[24]);

        assert!(histogram(&u, 3).is_err());
    }

    #[test]
    fn pushed_gaussian_histogram_matches_exact_density() {
        let d = Density::default_gaussian();
        let n = 1_000_000usize;
        let k = 24u32;
        let b = push_samples(&sample(&d, n, 77).unwrap(), k);
        let h = histogram(&b, 50).unwrap();
        for i in 0..50 {
            let (lo, hi) = (h.edges[i], h.edges[i + 1]);
            // expected bin mass from the exact pdf, by quadrature in β
            let p = integrate_adaptive(
                |beta: f64| crate::pushforward::s_k_angle(&d, k, beta),
                hi.clamp(-1.0, 1.0).acos(),
                lo.clamp(-1.0, 1.0).acos(),
                1e-12,
                2000,
            )
            .value;
            let expected = n as f64 * p;
            let sd = (n as f64 * p * (1.0 - p)).sqrt();
            let observed = h.counts[i] as f64;
            assert!(
                (observed - expected).abs() < 5.0 * sd,
                "bin {i}: {observed} vs {expected}"
            );
        }
        // the exact pdf route gives the same bin average in the interior
        let mid = pushforward_pdf(&d, k, 0.01).unwrap();
        assert!(mid > 0.0);
    }
}
