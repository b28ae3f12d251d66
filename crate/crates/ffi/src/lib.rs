//! C ABI for `chebpush`.
//!
//! Densities and Chebyshev series are exposed as opaque handles. Every
//! fallible function returns a [`ChebpushStatus`] and writes its result
//! through an out-pointer; on failure [`chebpush_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chebpush::densities::{sample, Distribution};
use chebpush::montecarlo::{ks_statistic, push_samples};
use chebpush::pushforward;
use chebpush::spectral::{expand_density, ChebSeries};
use chebpush::{Density, Error, SampleBatch};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebpushStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownDensity = 3,
    InvalidParameter = 4,
    Domain = 5,
    NotExpandable = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Opaque density handle.
pub struct ChebpushDensity(Density);

/// Opaque Chebyshev series handle.
pub struct ChebpushSeries(ChebSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> ChebpushStatus {
    match e {
        Error::Domain { .. } => ChebpushStatus::Domain,
        Error::UnknownDensity(_) => ChebpushStatus::UnknownDensity,
        Error::InvalidParameter(_) => ChebpushStatus::InvalidParameter,
        Error::NotExpandable(_) => ChebpushStatus::NotExpandable,
        Error::InvalidArgument(_) => ChebpushStatus::InvalidArgument,
    }
}

struct Failure(ChebpushStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ChebpushStatus::NullPointer, format!("`{what}` is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> ChebpushStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChebpushStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ChebpushStatus::Panic
        }
    }
}

unsafe fn density<'a>(d: *const ChebpushDensity) -> Result<&'a Density, Failure> {
    d.as_ref().map(|d| &d.0).ok_or_else(|| null("density"))
}

unsafe fn series<'a>(s: *const ChebpushSeries) -> Result<&'a ChebSeries, Failure> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null("series"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn chebpush_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn chebpush_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a selector such as `"uniform"` or `"gauss:0,0.25"`.
///
/// # Safety
/// `selector` must be a valid nul-terminated string; `out` must be writable.
/// The handle must be released with [`chebpush_density_free`].
#[no_mangle]
pub unsafe extern "C" fn chebpush_density_new(
    selector: *const c_char,
    out: *mut *mut ChebpushDensity,
) -> ChebpushStatus {
    guard(|| {
        if selector.is_null() {
            return Err(null("selector"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(selector)
            .to_str()
            .map_err(|e| Failure(ChebpushStatus::InvalidUtf8, e.to_string()))?;
        let d: Density = s.parse()?;
        write(out, Box::into_raw(Box::new(ChebpushDensity(d))))
    })
}

/// # Safety
/// `d` must come from [`chebpush_density_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chebpush_density_free(d: *mut ChebpushDensity) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_density_pdf(
    d: *const ChebpushDensity,
    x: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, density(d)?.pdf(x)))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_density_cdf(
    d: *const ChebpushDensity,
    x: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, density(d)?.cdf(x)))
}

/// `S_k(z) = f_k(z) √(1 - z²)`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_s_k(
    d: *const ChebpushDensity,
    k: u32,
    z: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::s_k(density(d)?, k, z)?))
}

/// Density of `T_k(X)` at `z`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_pushforward_pdf(
    d: *const ChebpushDensity,
    k: u32,
    z: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::pushforward_pdf(density(d)?, k, z)?))
}

/// Distribution function of `T_k(X)` at `z`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_pushforward_cdf(
    d: *const ChebpushDensity,
    k: u32,
    z: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::pushforward_cdf(density(d)?, k, z)?))
}

/// `max |S_k - 1/π|` over a cos-spaced grid of `grid >= 64` points.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_sup_error(
    d: *const ChebpushDensity,
    k: u32,
    grid: usize,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::sup_error(density(d)?, k, grid)?))
}

/// `P(T_k(X) < 0)`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_mass_left_of_zero(
    d: *const ChebpushDensity,
    k: u32,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::mass_left_of_zero(density(d)?, k)?))
}

/// Fills `out[0..n]` with `T_k(X_i)` for `n` draws keyed by `seed`.
///
/// # Safety
/// `d` must be a live handle; `out` must have room for `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn chebpush_sample(
    d: *const ChebpushDensity,
    k: u32,
    n: usize,
    seed: u64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| {
        let d = density(d)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()).into());
        }
        let pushed = push_samples(&sample(d, n, seed)?, k);
        ptr::copy_nonoverlapping(pushed.values().as_ptr(), out, n);
        Ok(())
    })
}

/// KS distance of `samples[0..n]` from the exact law of `T_k(X)`;
/// `pass` is set when it is below `1.95/√n`.
///
/// # Safety
/// `d` must be a live handle; `samples` must hold `n` doubles; the
/// out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_ks_test(
    d: *const ChebpushDensity,
    k: u32,
    samples: *const f64,
    n: usize,
    statistic: *mut f64,
    pass: *mut bool,
) -> ChebpushStatus {
    guard(|| {
        let d = density(d)?;
        if samples.is_null() {
            return Err(null("samples"));
        }
        if statistic.is_null() || pass.is_null() {
            return Err(null("out"));
        }
        let values = std::slice::from_raw_parts(samples, n).to_vec();
        let batch = SampleBatch::new(values, 0, k, "external");
        let r = ks_statistic(&batch, |z| {
            pushforward::pushforward_cdf(d, k, z).unwrap_or(f64::NAN)
        })?;
        write(statistic, r.statistic)?;
        write(pass, r.pass)
    })
}

/// Chebyshev expansion of the density to order `order`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable. The handle must be
/// released with [`chebpush_series_free`].
#[no_mangle]
pub unsafe extern "C" fn chebpush_expand(
    d: *const ChebpushDensity,
    order: usize,
    out: *mut *mut ChebpushSeries,
) -> ChebpushStatus {
    guard(|| {
        let s = expand_density(density(d)?, order)?;
        write(out, Box::into_raw(Box::new(ChebpushSeries(s))))
    })
}

/// # Safety
/// `s` must come from [`chebpush_expand`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_free(s: *mut ChebpushSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of coefficients, `L + 1`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_len(
    s: *const ChebpushSeries,
    out: *mut usize,
) -> ChebpushStatus {
    guard(|| write(out, series(s)?.coeffs().len()))
}

/// Copies up to `len` coefficients into `out`.
///
/// # Safety
/// `s` must be a live handle; `out` must have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_coeffs(
    s: *const ChebpushSeries,
    out: *mut f64,
    len: usize,
) -> ChebpushStatus {
    guard(|| {
        let c = series(s)?.coeffs();
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(c.as_ptr(), out, len.min(c.len()));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_eval(
    s: *const ChebpushSeries,
    x: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, series(s)?.eval(x)?))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_normalization_residual(
    s: *const ChebpushSeries,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, series(s)?.normalization_residual()))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_decay_reached(
    s: *const ChebpushSeries,
    out: *mut bool,
) -> ChebpushStatus {
    guard(|| write(out, series(s)?.decay_reached()))
}

/// Large-`k` approximation of `S_k(z)` from the series.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chebpush_series_asymptotic_s_k(
    s: *const ChebpushSeries,
    k: u32,
    z: f64,
    out: *mut f64,
) -> ChebpushStatus {
    guard(|| write(out, pushforward::asymptotic_s_k(series(s)?, k, z)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_distinct_codes() {
        let cases = [
            (
                Error::UnknownDensity("x".into()),
                ChebpushStatus::UnknownDensity,
            ),
            (
                Error::InvalidParameter("x".into()),
                ChebpushStatus::InvalidParameter,
            ),
            (
                Error::NotExpandable("x".into()),
                ChebpushStatus::NotExpandable,
            ),
            (
                Error::InvalidArgument("x".into()),
                ChebpushStatus::InvalidArgument,
            ),
        ];
        for (e, s) in cases {
            assert_eq!(status_of(&e), s);
        }
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, ChebpushStatus::Panic);
        let msg = unsafe { CStr::from_ptr(chebpush_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(chebpush_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
