//! Joint draws of the coefficient paths from their banded Gaussian full
//! conditional, with a jitter ladder guarding the Cholesky factorization.

use crate::banded::{
    build_difference_precision, difference_rows, posterior_mean, sample_banded_gaussian,
    BandedPrecision,
};
use crate::error::{Error, Result};
use rand::Rng;

/// Sample from `N(Q⁻¹ℓ, Q⁻¹)`, escalating a diagonal jitter if the
/// factorization fails: `1e-8·max(diag)`, then two ten-fold increases, then
/// give up. The factorization runs before any randomness is consumed, so the
/// draw stream is identical whether or not jitter was needed.
pub(crate) fn sample_spd_with_jitter<R: Rng + ?Sized>(
    q: &mut BandedPrecision,
    linear: &[f64],
    context: &str,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let mut added = 0.0f64;
    let base = 1e-8 * q.max_diag();
    for attempt in 0..4 {
        match sample_banded_gaussian(q, linear, rng) {
            Ok(x) => return Ok(x),
            Err(Error::NotPositiveDefinite { .. }) if attempt < 3 => {
                let target = base * 10f64.powi(attempt);
                q.add_jitter(target - added);
                added = target;
            }
            Err(Error::NotPositiveDefinite { index, .. }) => {
                return Err(Error::NotPositiveDefinite {
                    index,
                    context: Some(format!(
                        "{context}: factorization failed after jitter {added:.3e}"
                    )),
                });
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("jitter ladder exits via return");
}

/// One Gibbs draw of the trend-filtering path: observation precisions and
/// innovation precisions are both length `T`, and the precision is the
/// banded `diag(w_obs) + D'·diag(w_innov)·D`.
pub fn update_beta_btf<R: Rng + ?Sized>(
    y: &[f64],
    obs_prec: &[f64],
    innov_prec: &[f64],
    d: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if y.len() != obs_prec.len() {
        return Err(Error::invalid(format!(
            "series length {} does not match precision length {}",
            y.len(),
            obs_prec.len()
        )));
    }
    let mut q = build_difference_precision(d, obs_prec, innov_prec, None)?;
    let linear: Vec<f64> = y.iter().zip(obs_prec).map(|(v, w)| v * w).collect();
    sample_spd_with_jitter(&mut q, &linear, "trend coefficient update", rng)
}

/// Assemble the stacked regression precision
/// `X'·diag(w_obs)·X + (D ⊗ I_p)'·diag(w_innov)·(D ⊗ I_p)` over the
/// time-major coefficient vector, bandwidth `d·p`.
fn build_tvp_precision(
    x: &[f64],
    p: usize,
    obs_prec: &[f64],
    innov_prec: &[f64],
    d: usize,
) -> Result<BandedPrecision> {
    let t_len = obs_prec.len();
    if innov_prec.len() != t_len * p {
        return Err(Error::invalid(format!(
            "innovation precision length {} does not match {} x {}",
            innov_prec.len(),
            t_len,
            p
        )));
    }
    if let Some(w) = innov_prec.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::invalid(format!(
            "innovation precisions must be positive and finite, got {w}"
        )));
    }
    let mut q = BandedPrecision::zeros(t_len * p, d * p);
    for t in 0..t_len {
        let w = obs_prec[t];
        let row = &x[t * p..(t + 1) * p];
        for j in 0..p {
            if row[j] == 0.0 {
                continue;
            }
            for k in j..p {
                if row[k] != 0.0 {
                    q.add(t * p + j, t * p + k, w * row[j] * row[k]);
                }
            }
        }
    }
    for (t, (start, coeffs)) in difference_rows(t_len, d, None)?.into_iter().enumerate() {
        for j in 0..p {
            let w = innov_prec[t * p + j];
            for (a, &ca) in coeffs.iter().enumerate() {
                let ia = (start + a) * p + j;
                for (b, &cb) in coeffs.iter().enumerate().skip(a) {
                    q.add(ia, (start + b) * p + j, w * ca * cb);
                }
            }
        }
    }
    Ok(q)
}

/// One Gibbs draw of all regression coefficient paths jointly.
/// `x` is row-major `T × p`; `innov_prec` is stacked time-major.
pub fn update_beta_tvp<R: Rng + ?Sized>(
    y: &[f64],
    x: &[f64],
    p: usize,
    obs_prec: &[f64],
    innov_prec: &[f64],
    d: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let t_len = y.len();
    if x.len() != t_len * p {
        return Err(Error::invalid(format!(
            "design matrix has {} entries, expected {} x {}",
            x.len(),
            t_len,
            p
        )));
    }
    let mut q = build_tvp_precision(x, p, obs_prec, innov_prec, d)?;
    let mut linear = vec![0.0f64; t_len * p];
    for t in 0..t_len {
        let wy = obs_prec[t] * y[t];
        for j in 0..p {
            linear[t * p + j] = x[t * p + j] * wy;
        }
    }
    sample_spd_with_jitter(&mut q, &linear, "regression coefficient update", rng)
}

/// Deterministic starting paths for the regression: the posterior mean under
/// unit-information observation weights and a moderate random-walk
/// smoothness penalty. Keeps the initial differenced paths away from exact
/// zero so the shrinkage block starts from finite log-variances.
pub(crate) fn ridge_init(y: &[f64], x: &[f64], p: usize, d: usize) -> Result<Vec<f64>> {
    let t_len = y.len();
    let mean = y.iter().sum::<f64>() / t_len as f64;
    let var = y
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / t_len as f64;
    let obs_prec = vec![1.0 / var.max(1e-8); t_len];
    // Smoothness penalty on the differences; near-diffuse weights on the
    // initialization rows so the level is not shrunk toward zero.
    let mut innov_prec = vec![t_len as f64 * obs_prec[0]; t_len * p];
    for w in innov_prec.iter_mut().take(d * p) {
        *w = obs_prec[0] / t_len as f64;
    }
    let q = build_tvp_precision(x, p, &obs_prec, &innov_prec, d)?;
    let mut linear = vec![0.0f64; t_len * p];
    for t in 0..t_len {
        let wy = obs_prec[t] * y[t];
        for j in 0..p {
            linear[t * p + j] = x[t * p + j] * wy;
        }
    }
    posterior_mean(&q, &linear)
}
