//! Observation-error updates: slice sampling of a constant noise scale with
//! an optional global-shrinkage coupling, and a log-AR(1) stochastic
//! volatility block sharing the mixture machinery of the shrinkage process.

use crate::dists::slice_sample;
use crate::dsp::omori::OmoriTable;
use crate::dsp::{offset, sample_log_variance_path, sample_mixture_indicators, DspState};
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

/// Slice-update the constant observation scale σ_ε under a Jeffreys prior,
/// `p(σ) ∝ σ^{-(n+1)} exp(-SSR/2σ²)`. When the global shrinkage scale is
/// coupled to the noise level through τ ~ C⁺(0, σ/√n_s), the extra factor
/// `1/(σ(1 + n_s τ²/σ²))` enters the target; `coupling = (τ², n_s)`.
pub fn update_sigma_eps<R: Rng + ?Sized>(
    residuals: &[f64],
    sigma: f64,
    coupling: Option<(f64, f64)>,
    rng: &mut R,
) -> Result<f64> {
    if residuals.is_empty() {
        return Err(Error::invalid("no residuals for the noise update"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid(format!("current sigma must be positive, got {sigma}")));
    }
    let n = residuals.len() as f64;
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    if !ssr.is_finite() {
        return Err(Error::Numerical("non-finite residual sum of squares".into()));
    }
    let log_target = |u: f64| {
        let inv_s2 = (-2.0 * u).exp();
        let mut lp = -n * u - 0.5 * ssr * inv_s2;
        if let Some((tau2, n_s)) = coupling {
            lp += -u - (n_s * tau2 * inv_s2).ln_1p();
        }
        lp
    };
    let u = slice_sample(&log_target, sigma.ln(), 1.0, None, rng)?;
    Ok(u.exp())
}

/// Stochastic-volatility state for the observation errors:
/// `r_t ~ N(0, exp(h_t))` with `h_{t+1} = μ + φ(h_t − μ) + ν_t`,
/// `ν_t ~ N(0, σ_η²)` and `h_1 ~ N(μ, σ_η²)`.
#[derive(Debug, Clone)]
pub struct SvState {
    pub h: Vec<f64>,
    pub s: Vec<usize>,
    pub mu: f64,
    pub phi: f64,
    pub sigma_eta2: f64,
    /// Fixed offset in the log-square transform.
    pub c: f64,
}

impl SvState {
    pub fn init(residuals: &[f64], offset_scale: f64, table: &OmoriTable) -> Self {
        let c = offset(residuals, offset_scale);
        let seed = DspState::init(residuals, c, 0.5, 0.5, table);
        Self {
            h: seed.h,
            s: seed.s,
            mu: seed.mu,
            phi: seed.phi,
            sigma_eta2: 0.1,
            c,
        }
    }

    /// The volatility path σ_t = exp(h_t/2).
    pub fn sigma_path(&self) -> Vec<f64> {
        self.h.iter().map(|h| (0.5 * h).exp()).collect()
    }
}

/// One Gibbs sweep of the stochastic-volatility block given the current
/// residuals: mixture indicators, the log-volatility path, the innovation
/// variance (conjugate inverse-gamma), the level (conjugate normal), and the
/// autocorrelation (slice with a Beta prior on (φ+1)/2).
pub fn fit_sv_observation<R: Rng + ?Sized>(
    state: &mut SvState,
    residuals: &[f64],
    table: &OmoriTable,
    a_phi: f64,
    b_phi: f64,
    rng: &mut R,
) -> Result<()> {
    let t_len = residuals.len();
    if t_len != state.h.len() {
        return Err(Error::invalid(format!(
            "residual length {} does not match volatility state {}",
            t_len,
            state.h.len()
        )));
    }
    let y_tilde: Vec<f64> = residuals.iter().map(|r| (r * r + state.c).ln()).collect();

    state.s = sample_mixture_indicators(&y_tilde, &state.h, table, rng);
    let xi = vec![1.0 / state.sigma_eta2; t_len];
    state.h = sample_log_variance_path(
        &y_tilde, &state.s, table, &xi, state.mu, state.phi, 0.0, rng,
    )?;

    // Innovation variance: IG(2.5, 0.025) prior, conjugate given the path.
    let centered: Vec<f64> = state.h.iter().map(|h| h - state.mu).collect();
    let mut ssr = centered[0] * centered[0];
    for t in 1..t_len {
        let e = centered[t] - state.phi * centered[t - 1];
        ssr += e * e;
    }
    let shape = 2.5 + 0.5 * t_len as f64;
    let rate = 0.025 + 0.5 * ssr;
    let gamma = Gamma::new(shape, 1.0 / rate)
        .map_err(|e| Error::Numerical(format!("invalid volatility variance update: {e}")))?;
    let prec: f64 = gamma.sample(rng);
    state.sigma_eta2 = 1.0 / prec;

    // Level: N(0, 100) prior, conjugate given path, φ, and σ_η².
    let w = 1.0 / state.sigma_eta2;
    let om_phi = 1.0 - state.phi;
    let mut q = 1.0 / 100.0 + w;
    let mut l = w * state.h[0];
    for t in 1..t_len {
        q += w * om_phi * om_phi;
        l += w * om_phi * (state.h[t] - state.phi * state.h[t - 1]);
    }
    let e: f64 = StandardNormal.sample(rng);
    state.mu = l / q + e / q.sqrt();

    // Autocorrelation on (−1, 1).
    let centered: Vec<f64> = state.h.iter().map(|h| h - state.mu).collect();
    let log_target = |phi: f64| {
        let mut lp = (a_phi - 1.0) * ((1.0 + phi) / 2.0).ln()
            + (b_phi - 1.0) * ((1.0 - phi) / 2.0).ln();
        let mut ssr = 0.0;
        for t in 1..t_len {
            let e = centered[t] - phi * centered[t - 1];
            ssr += e * e;
        }
        lp -= 0.5 * w * ssr;
        lp
    };
    state.phi = slice_sample(
        &log_target,
        state.phi.clamp(-0.995, 0.995),
        1.0,
        Some((-1.0 + 1e-12, 1.0 - 1e-12)),
        rng,
    )?;
    Ok(())
}
