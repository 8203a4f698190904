//! C ABI for the `dynshrink` library.
//!
//! Fits are exposed through an opaque [`DynshrinkFit`] handle created by
//! `dynshrink_fit_btf` / `dynshrink_fit_tvp` and released with
//! `dynshrink_fit_free`. Every fallible function returns a
//! [`DynshrinkStatus`]; on failure, `dynshrink_last_error_message` returns a
//! thread-local, NUL-terminated description that stays valid until the next
//! failing call on the same thread. The generated header lives at
//! `include/dynshrink.h` and is refreshed by the build script.

use dynshrink::inference::{gbpv, simultaneous_bands};
use dynshrink::models::{
    fit_btf, fit_tvp, BtfModelSpec, McmcConfig, ModelDraws, ObsError, PriorFamily,
    TvpModelSpec,
};
use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::CString;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible API entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynshrinkStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument violated a documented precondition.
    InvalidArgument = 2,
    /// The sampler hit an unrecoverable numerical failure.
    NumericalFailure = 3,
    /// File or serialization failure.
    IoError = 4,
    /// Unexpected internal failure (a bug; please report it).
    InternalError = 5,
}

/// Prior family on the differenced coefficient innovations.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynshrinkPrior {
    /// Dynamic horseshoe.
    Dhs = 0,
    /// Static horseshoe.
    Hs = 1,
    /// Normal–inverse-gamma.
    Nig = 2,
}

/// Observation-error model.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynshrinkObsError {
    /// Constant observation variance.
    Constant = 0,
    /// Stochastic-volatility observation errors.
    Sv = 1,
}

/// Sampler settings. Obtain defaults from `dynshrink_default_options` and
/// override fields as needed.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DynshrinkMcmcOptions {
    pub n_iter: u64,
    pub burn: u64,
    pub thin: u64,
    pub chains: u64,
    pub seed: u64,
}

/// Opaque handle to a completed model fit.
pub struct DynshrinkFit {
    draws: ModelDraws,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("").expect("empty string has no NUL"));
}

fn set_last_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NULs removed");
    });
}

fn status_of(err: &dynshrink::Error) -> DynshrinkStatus {
    use dynshrink::Error::*;
    match err {
        InvalidArgument(_) | Data(_) => DynshrinkStatus::InvalidArgument,
        NotPositiveDefinite { .. } | Numerical(_) => DynshrinkStatus::NumericalFailure,
        Io(_) | Csv(_) | Json(_) => DynshrinkStatus::IoError,
    }
}

fn fail(err: dynshrink::Error) -> DynshrinkStatus {
    set_last_error(&err.to_string());
    status_of(&err)
}

fn guard<F: FnOnce() -> DynshrinkStatus>(f: F) -> DynshrinkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".to_string());
            set_last_error(&format!("internal panic: {msg}"));
            DynshrinkStatus::InternalError
        }
    }
}

fn options_to_config(opts: Option<&DynshrinkMcmcOptions>) -> McmcConfig {
    match opts {
        None => McmcConfig::default_with_seed(0),
        Some(o) => McmcConfig {
            n_iter: o.n_iter as usize,
            burn: o.burn as usize,
            thin: o.thin as usize,
            chains: o.chains as usize,
            ..McmcConfig::default_with_seed(o.seed)
        },
    }
}

fn prior_of(p: DynshrinkPrior) -> PriorFamily {
    match p {
        DynshrinkPrior::Dhs => PriorFamily::Dhs,
        DynshrinkPrior::Hs => PriorFamily::Hs,
        DynshrinkPrior::Nig => PriorFamily::Nig,
    }
}

fn obs_of(o: DynshrinkObsError) -> ObsError {
    match o {
        DynshrinkObsError::Constant => ObsError::Constant,
        DynshrinkObsError::Sv => ObsError::Sv,
    }
}

unsafe fn missing_mask(missing: *const u8, t_len: usize) -> Vec<bool> {
    if missing.is_null() {
        vec![false; t_len]
    } else {
        std::slice::from_raw_parts(missing, t_len)
            .iter()
            .map(|&m| m != 0)
            .collect()
    }
}

/// Default sampler options: 10000 iterations, 5000 burn-in, thinning 5, one
/// chain, seed 0.
#[no_mangle]
pub extern "C" fn dynshrink_default_options() -> DynshrinkMcmcOptions {
    let config = McmcConfig::default_with_seed(0);
    DynshrinkMcmcOptions {
        n_iter: config.n_iter as u64,
        burn: config.burn as u64,
        thin: config.thin as u64,
        chains: config.chains as u64,
        seed: config.seed,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dynshrink_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Description of the most recent failure on this thread, NUL-terminated.
/// Valid until the next failing call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn dynshrink_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Fit Bayesian trend filtering to a series.
///
/// `y` points to `t_len` observations; entries flagged in `missing`
/// (nonzero bytes, or NaN values of `y` when `missing` is NULL) are imputed
/// during sampling. `d` is the differencing order (1 or 2). On success
/// writes a new handle to `*out`; the caller owns it and must release it
/// with `dynshrink_fit_free`.
///
/// # Safety
///
/// `y` must point to `t_len` readable doubles; `missing` must be NULL or
/// point to `t_len` readable bytes; `opts` must be NULL or point to a valid
/// options struct; `out` must point to writable pointer storage.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_btf(
    y: *const f64,
    t_len: size_t,
    missing: *const u8,
    d: u32,
    prior: DynshrinkPrior,
    obs_error: DynshrinkObsError,
    opts: *const DynshrinkMcmcOptions,
    out: *mut *mut DynshrinkFit,
) -> DynshrinkStatus {
    if y.is_null() || out.is_null() {
        set_last_error("y and out must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    guard(|| {
        let y = std::slice::from_raw_parts(y, t_len);
        let mask = missing_mask(missing, t_len);
        let spec = BtfModelSpec {
            d: d as usize,
            prior: prior_of(prior),
            obs_error: obs_of(obs_error),
        };
        let config = options_to_config(opts.as_ref());
        match fit_btf(y, &mask, &spec, &config) {
            Ok(draws) => {
                *out = Box::into_raw(Box::new(DynshrinkFit { draws }));
                DynshrinkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Fit time-varying-parameter regression.
///
/// `x` is the row-major `t_len × p` design matrix. See `dynshrink_fit_btf`
/// for the remaining arguments and ownership rules.
///
/// # Safety
///
/// `y` must point to `t_len` readable doubles, `x` to `t_len * p` readable
/// doubles; `missing` must be NULL or point to `t_len` readable bytes;
/// `opts` must be NULL or valid; `out` must point to writable pointer
/// storage.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_tvp(
    y: *const f64,
    t_len: size_t,
    x: *const f64,
    p: size_t,
    missing: *const u8,
    d: u32,
    prior: DynshrinkPrior,
    obs_error: DynshrinkObsError,
    opts: *const DynshrinkMcmcOptions,
    out: *mut *mut DynshrinkFit,
) -> DynshrinkStatus {
    if y.is_null() || x.is_null() || out.is_null() {
        set_last_error("y, x, and out must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    if p == 0 || t_len.checked_mul(p).is_none() {
        set_last_error("design dimensions overflow or p = 0");
        return DynshrinkStatus::InvalidArgument;
    }
    guard(|| {
        let y = std::slice::from_raw_parts(y, t_len);
        let x = std::slice::from_raw_parts(x, t_len * p);
        let mask = missing_mask(missing, t_len);
        let spec = TvpModelSpec {
            d: d as usize,
            prior: prior_of(prior),
            obs_error: obs_of(obs_error),
        };
        let config = options_to_config(opts.as_ref());
        match fit_tvp(y, &mask, x, p, &spec, &config) {
            Ok(draws) => {
                *out = Box::into_raw(Box::new(DynshrinkFit { draws }));
                DynshrinkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of retained posterior draws, or 0 for a NULL handle.
///
/// # Safety
///
/// `fit` must be NULL or a handle returned by a fit function that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_n_draws(fit: *const DynshrinkFit) -> size_t {
    fit.as_ref().map(|f| f.draws.n_draws()).unwrap_or(0)
}

/// Series length of the fitted model, or 0 for a NULL handle.
///
/// # Safety
///
/// `fit` must be NULL or a live fit handle.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_t_len(fit: *const DynshrinkFit) -> size_t {
    fit.as_ref().map(|f| f.draws.t_len).unwrap_or(0)
}

/// Number of predictors (1 for trend filtering), or 0 for a NULL handle.
///
/// # Safety
///
/// `fit` must be NULL or a live fit handle.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_n_predictors(fit: *const DynshrinkFit) -> size_t {
    fit.as_ref().map(|f| f.draws.p).unwrap_or(0)
}

unsafe fn expect_len(
    fit: &DynshrinkFit,
    len: size_t,
    expected: usize,
) -> Option<DynshrinkStatus> {
    if len != expected {
        set_last_error(&format!(
            "output buffer holds {len} values but {expected} are required"
        ));
        return Some(DynshrinkStatus::InvalidArgument);
    }
    let _ = fit;
    None
}

/// Posterior mean of the coefficient paths, written time-major
/// (`(t, j) → t·p + j`) into `out`, which must hold `t_len · p` doubles.
///
/// # Safety
///
/// `fit` must be a live fit handle; `out` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_posterior_mean(
    fit: *const DynshrinkFit,
    out: *mut f64,
    len: size_t,
) -> DynshrinkStatus {
    let Some(fit) = fit.as_ref() else {
        set_last_error("fit handle is NULL");
        return DynshrinkStatus::NullPointer;
    };
    if out.is_null() {
        set_last_error("out must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    if let Some(status) = expect_len(fit, len, fit.draws.t_len * fit.draws.p) {
        return status;
    }
    guard(|| {
        let mean = fit.draws.posterior_mean_beta();
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&mean);
        DynshrinkStatus::Ok
    })
}

/// One retained draw of the coefficient paths (time-major), `draw` indexed
/// from 0.
///
/// # Safety
///
/// `fit` must be a live fit handle; `out` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_beta_draw(
    fit: *const DynshrinkFit,
    draw: size_t,
    out: *mut f64,
    len: size_t,
) -> DynshrinkStatus {
    let Some(fit) = fit.as_ref() else {
        set_last_error("fit handle is NULL");
        return DynshrinkStatus::NullPointer;
    };
    if out.is_null() {
        set_last_error("out must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    if draw >= fit.draws.n_draws() {
        set_last_error(&format!(
            "draw index {draw} out of range ({} retained)",
            fit.draws.n_draws()
        ));
        return DynshrinkStatus::InvalidArgument;
    }
    if let Some(status) = expect_len(fit, len, fit.draws.t_len * fit.draws.p) {
        return status;
    }
    guard(|| {
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&fit.draws.beta[draw]);
        DynshrinkStatus::Ok
    })
}

/// Simultaneous credible bands at the given level, written time-major into
/// `lo` and `hi` (each `t_len · p` doubles).
///
/// # Safety
///
/// `fit` must be a live fit handle; `lo` and `hi` must each point to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_bands(
    fit: *const DynshrinkFit,
    level: f64,
    lo: *mut f64,
    hi: *mut f64,
    len: size_t,
) -> DynshrinkStatus {
    let Some(fit) = fit.as_ref() else {
        set_last_error("fit handle is NULL");
        return DynshrinkStatus::NullPointer;
    };
    if lo.is_null() || hi.is_null() {
        set_last_error("lo and hi must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    if let Some(status) = expect_len(fit, len, fit.draws.t_len * fit.draws.p) {
        return status;
    }
    guard(|| {
        let lo = std::slice::from_raw_parts_mut(lo, len);
        let hi = std::slice::from_raw_parts_mut(hi, len);
        for j in 0..fit.draws.p {
            let paths = fit.draws.beta_paths(j);
            match simultaneous_bands(&paths, level) {
                Ok((blo, bhi)) => {
                    for t in 0..fit.draws.t_len {
                        lo[t * fit.draws.p + j] = blo[t];
                        hi[t * fit.draws.p + j] = bhi[t];
                    }
                }
                Err(e) => return fail(e),
            }
        }
        DynshrinkStatus::Ok
    })
}

/// Global band score per coefficient, written into `out` (`p` doubles).
///
/// # Safety
///
/// `fit` must be a live fit handle; `out` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_gbpv(
    fit: *const DynshrinkFit,
    out: *mut f64,
    len: size_t,
) -> DynshrinkStatus {
    let Some(fit) = fit.as_ref() else {
        set_last_error("fit handle is NULL");
        return DynshrinkStatus::NullPointer;
    };
    if out.is_null() {
        set_last_error("out must not be NULL");
        return DynshrinkStatus::NullPointer;
    }
    if let Some(status) = expect_len(fit, len, fit.draws.p) {
        return status;
    }
    guard(|| {
        let out = std::slice::from_raw_parts_mut(out, len);
        for j in 0..fit.draws.p {
            match gbpv(&fit.draws.beta_paths(j)) {
                Ok(score) => out[j] = score,
                Err(e) => return fail(e),
            }
        }
        DynshrinkStatus::Ok
    })
}

/// Release a fit handle. NULL is a no-op. After this call the handle is
/// invalid.
///
/// # Safety
///
/// `fit` must be NULL or a handle returned by a fit function, freed at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn dynshrink_fit_free(fit: *mut DynshrinkFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}
