#ifndef DYNSHRINK_H
#define DYNSHRINK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Observation-error model.
typedef enum {
  // Constant observation variance.
  DYNSHRINK_OBS_ERROR_CONSTANT = 0,
  // Stochastic-volatility observation errors.
  DYNSHRINK_OBS_ERROR_SV = 1,
} DynshrinkObsError;

// Prior family on the differenced coefficient innovations.
typedef enum {
  // Dynamic horseshoe.
  DYNSHRINK_PRIOR_DHS = 0,
  // Static horseshoe.
  DYNSHRINK_PRIOR_HS = 1,
  // Normal–inverse-gamma.
  DYNSHRINK_PRIOR_NIG = 2,
} DynshrinkPrior;

// Status code returned by every fallible API entry point.
typedef enum {
  DYNSHRINK_STATUS_OK = 0,
  // A required pointer argument was NULL.
  DYNSHRINK_STATUS_NULL_POINTER = 1,
  // An argument violated a documented precondition.
  DYNSHRINK_STATUS_INVALID_ARGUMENT = 2,
  // The sampler hit an unrecoverable numerical failure.
  DYNSHRINK_STATUS_NUMERICAL_FAILURE = 3,
  // File or serialization failure.
  DYNSHRINK_STATUS_IO_ERROR = 4,
  // Unexpected internal failure (a bug; please report it).
  DYNSHRINK_STATUS_INTERNAL_ERROR = 5,
} DynshrinkStatus;

// Opaque handle to a completed model fit.
typedef struct DynshrinkFit DynshrinkFit;

// Sampler settings. Obtain defaults from `dynshrink_default_options` and
// override fields as needed.
typedef struct {
  uint64_t n_iter;
  uint64_t burn;
  uint64_t thin;
  uint64_t chains;
  uint64_t seed;
} DynshrinkMcmcOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Default sampler options: 10000 iterations, 5000 burn-in, thinning 5, one
// chain, seed 0.
DynshrinkMcmcOptions dynshrink_default_options(void);

// Library version as a static NUL-terminated string.
const char *dynshrink_version(void);

// Description of the most recent failure on this thread, NUL-terminated.
// Valid until the next failing call on the same thread. Never NULL.
const char *dynshrink_last_error_message(void);

// Fit Bayesian trend filtering to a series.
//
// `y` points to `t_len` observations; entries flagged in `missing`
// (nonzero bytes, or NaN values of `y` when `missing` is NULL) are imputed
// during sampling. `d` is the differencing order (1 or 2). On success
// writes a new handle to `*out`; the caller owns it and must release it
// with `dynshrink_fit_free`.
//
// # Safety
//
// `y` must point to `t_len` readable doubles; `missing` must be NULL or
// point to `t_len` readable bytes; `opts` must be NULL or point to a valid
// options struct; `out` must point to writable pointer storage.
DynshrinkStatus dynshrink_fit_btf(const double *y,
                                  size_t t_len,
                                  const uint8_t *missing,
                                  uint32_t d,
                                  DynshrinkPrior prior,
                                  DynshrinkObsError obs_error,
                                  const DynshrinkMcmcOptions *opts,
                                  DynshrinkFit **out);

// Fit time-varying-parameter regression.
//
// `x` is the row-major `t_len × p` design matrix. See `dynshrink_fit_btf`
// for the remaining arguments and ownership rules.
//
// # Safety
//
// `y` must point to `t_len` readable doubles, `x` to `t_len * p` readable
// doubles; `missing` must be NULL or point to `t_len` readable bytes;
// `opts` must be NULL or valid; `out` must point to writable pointer
// storage.
DynshrinkStatus dynshrink_fit_tvp(const double *y,
                                  size_t t_len,
                                  const double *x,
                                  size_t p,
                                  const uint8_t *missing,
                                  uint32_t d,
                                  DynshrinkPrior prior,
                                  DynshrinkObsError obs_error,
                                  const DynshrinkMcmcOptions *opts,
                                  DynshrinkFit **out);

// Number of retained posterior draws, or 0 for a NULL handle.
//
// # Safety
//
// `fit` must be NULL or a handle returned by a fit function that has not
// been freed.
size_t dynshrink_fit_n_draws(const DynshrinkFit *fit);

// Series length of the fitted model, or 0 for a NULL handle.
//
// # Safety
//
// `fit` must be NULL or a live fit handle.
size_t dynshrink_fit_t_len(const DynshrinkFit *fit);

// Number of predictors (1 for trend filtering), or 0 for a NULL handle.
//
// # Safety
//
// `fit` must be NULL or a live fit handle.
size_t dynshrink_fit_n_predictors(const DynshrinkFit *fit);

// Posterior mean of the coefficient paths, written time-major
// (`(t, j) → t·p + j`) into `out`, which must hold `t_len · p` doubles.
//
// # Safety
//
// `fit` must be a live fit handle; `out` must point to `len` writable
// doubles.
DynshrinkStatus dynshrink_fit_posterior_mean(const DynshrinkFit *fit, double *out, size_t len);

// One retained draw of the coefficient paths (time-major), `draw` indexed
// from 0.
//
// # Safety
//
// `fit` must be a live fit handle; `out` must point to `len` writable
// doubles.
DynshrinkStatus dynshrink_fit_beta_draw(const DynshrinkFit *fit,
                                        size_t draw,
                                        double *out,
                                        size_t len);

// Simultaneous credible bands at the given level, written time-major into
// `lo` and `hi` (each `t_len · p` doubles).
//
// # Safety
//
// `fit` must be a live fit handle; `lo` and `hi` must each point to `len`
// writable doubles.
DynshrinkStatus dynshrink_fit_bands(const DynshrinkFit *fit,
                                    double level,
                                    double *lo,
                                    double *hi,
                                    size_t len);

// Global band score per coefficient, written into `out` (`p` doubles).
//
// # Safety
//
// `fit` must be a live fit handle; `out` must point to `len` writable
// doubles.
DynshrinkStatus dynshrink_fit_gbpv(const DynshrinkFit *fit, double *out, size_t len);

// Release a fit handle. NULL is a no-op. After this call the handle is
// invalid.
//
// # Safety
//
// `fit` must be NULL or a handle returned by a fit function, freed at most
// once.
void dynshrink_fit_free(DynshrinkFit *fit);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DYNSHRINK_H */
