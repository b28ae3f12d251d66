#ifndef CHEBPUSH_H
#define CHEBPUSH_H

/* Generated by cbindgen. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum {
  CHEBPUSH_STATUS_OK = 0,
  CHEBPUSH_STATUS_NULL_POINTER = 1,
  CHEBPUSH_STATUS_INVALID_UTF8 = 2,
  CHEBPUSH_STATUS_UNKNOWN_DENSITY = 3,
  CHEBPUSH_STATUS_INVALID_PARAMETER = 4,
  CHEBPUSH_STATUS_DOMAIN = 5,
  CHEBPUSH_STATUS_NOT_EXPANDABLE = 6,
  CHEBPUSH_STATUS_INVALID_ARGUMENT = 7,
  CHEBPUSH_STATUS_PANIC = 8,
} ChebpushStatus;

/**
 * Opaque density handle.
 */
typedef struct ChebpushDensity ChebpushDensity;

/**
 * Opaque Chebyshev series handle.
 */
typedef struct ChebpushSeries ChebpushSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *chebpush_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *chebpush_version(void);

/**
 * Parses a selector such as `"uniform"` or `"gauss:0,0.25"`.
 *
 * # Safety
 * `selector` must be a valid nul-terminated string; `out` must be writable.
 * The handle must be released with [`chebpush_density_free`].
 */
ChebpushStatus chebpush_density_new(const char *selector, ChebpushDensity **out);

/**
 * # Safety
 * `d` must come from [`chebpush_density_new`] and not be freed twice.
 */
void chebpush_density_free(ChebpushDensity *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_density_pdf(const ChebpushDensity *d, double x, double *out);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_density_cdf(const ChebpushDensity *d, double x, double *out);

/**
 * `S_k(z) = f_k(z) √(1 - z²)`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_s_k(const ChebpushDensity *d, uint32_t k, double z, double *out);

/**
 * Density of `T_k(X)` at `z`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_pushforward_pdf(const ChebpushDensity *d, uint32_t k, double z, double *out);

/**
 * Distribution function of `T_k(X)` at `z`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_pushforward_cdf(const ChebpushDensity *d, uint32_t k, double z, double *out);

/**
 * `max |S_k - 1/π|` over a cos-spaced grid of `grid >= 64` points.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_sup_error(const ChebpushDensity *d, uint32_t k, size_t grid, double *out);

/**
 * `P(T_k(X) < 0)`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_mass_left_of_zero(const ChebpushDensity *d, uint32_t k, double *out);

/**
 * Fills `out[0..n]` with `T_k(X_i)` for `n` draws keyed by `seed`.
 *
 * # Safety
 * `d` must be a live handle; `out` must have room for `n` doubles.
 */
ChebpushStatus chebpush_sample(const ChebpushDensity *d, uint32_t k, size_t n, uint64_t seed, double *out);

/**
 * KS distance of `samples[0..n]` from the exact law of `T_k(X)`;
 * `pass` is set when it is below `1.95/√n`.
 *
 * # Safety
 * `d` must be a live handle; `samples` must hold `n` doubles; the
 * out-pointers must be writable.
 */
ChebpushStatus chebpush_ks_test(const ChebpushDensity *d, uint32_t k, const double *samples, size_t n, double *statistic, bool *pass);

/**
 * Chebyshev expansion of the density to order `order`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable. The handle must be
 * released with [`chebpush_series_free`].
 */
ChebpushStatus chebpush_expand(const ChebpushDensity *d, size_t order, ChebpushSeries **out);

/**
 * # Safety
 * `s` must come from [`chebpush_expand`] and not be freed twice.
 */
void chebpush_series_free(ChebpushSeries *s);

/**
 * Number of coefficients, `L + 1`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_series_len(const ChebpushSeries *s, size_t *out);

/**
 * Copies up to `len` coefficients into `out`.
 *
 * # Safety
 * `s` must be a live handle; `out` must have room for `len` doubles.
 */
ChebpushStatus chebpush_series_coeffs(const ChebpushSeries *s, double *out, size_t len);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_series_eval(const ChebpushSeries *s, double x, double *out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_series_normalization_residual(const ChebpushSeries *s, double *out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_series_decay_reached(const ChebpushSeries *s, bool *out);

/**
 * Large-`k` approximation of `S_k(z)` from the series.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
ChebpushStatus chebpush_series_asymptotic_s_k(const ChebpushSeries *s, uint32_t k, double z, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEBPUSH_H */
