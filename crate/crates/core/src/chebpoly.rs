//! Chebyshev polynomials of the first kind on `[-1, 1]`.
//!
//! `T_k(x) = cos(k arccos x)` is the reference evaluation; the three-term
//! recurrence is kept alongside it as the iterated-map view and as a
//! cross-check.

use crate::error::{Error, Result};

/// Inputs this far outside `[-1, 1]` are clamped instead of rejected.
pub const BOUNDARY_SLACK: f64 = 1e-12;

/// Below this `|sin(x/2)|` the trigonometric sum identities fall back to
/// direct summation.
const SUM_SINGULARITY: f64 = 1e-12;

/// Clamps `x` onto `[-1, 1]`, tolerating [`BOUNDARY_SLACK`] of overshoot.
pub fn clamp_unit(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + BOUNDARY_SLACK {
        return Err(Error::domain("x", x, "[-1, 1]"));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `T_k(x) = cos(k arccos x)`.
pub fn cheb_eval(k: u32, x: f64) -> Result<f64> {
    let x = clamp_unit(x)?;
    Ok(cheb_eval_unchecked(k, x))
}

#[inline]
pub(crate) fn cheb_eval_unchecked(k: u32, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        _ => (f64::from(k) * x.acos()).cos(),
    }
}

/// `T_k(x)` via `T_{j+1} = 2x T_j - T_{j-1}`.
pub fn cheb_eval_recurrence(k: u32, x: f64) -> Result<f64> {
    let x = clamp_unit(x)?;
    if k == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `∫_{-1}^{1} T_k(x) dx`.
pub fn cheb_integral(k: u32) -> f64 {
    match k {
        1 => 0.0,
        _ if k % 2 == 1 => 0.0,
        _ => {
            let k = f64::from(k);
            2.0 / (1.0 - k * k)
        }
    }
}

/// `Σ_{j=1}^{n} cos(j x)`.
pub fn cosine_sum(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let denom = half.sin();
    if denom.abs() < SUM_SINGULARITY {
        return (1..=n).map(|j| (f64::from(j) * x).cos()).sum();
    }
    let n = f64::from(n);
    (n * half).sin() * ((n + 1.0) * half).cos() / denom
}

/// `Σ_{j=1}^{n} sin(j x)`.
pub fn sine_sum(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let denom = half.sin();
    if denom.abs() < SUM_SINGULARITY {
        return (1..=n).map(|j| (f64::from(j) * x).sin()).sum();
    }
    let n = f64::from(n);
    (n * half).sin() * ((n + 1.0) * half).sin() / denom
}

/// Affine bijection between `[a, b]` and `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMap {
    a: f64,
    b: f64,
}

impl IntervalMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidArgument(format!(
                "interval requires finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `x ↦ (2x - a - b) / (b - a)`.
    pub fn to_unit(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < self.a || x > self.b {
            return Err(Error::domain("x", x, "[a, b]"));
        }
        let t = (2.0 * x - self.a - self.b) / (self.b - self.a);
        Ok(t.clamp(-1.0, 1.0))
    }

    pub fn from_unit(&self, t: f64) -> Result<f64> {
        let t = clamp_unit(t)?;
        let x = 0.5 * ((self.b - self.a) * t + self.a + self.b);
        Ok(x.clamp(self.a, self.b))
    }
}
