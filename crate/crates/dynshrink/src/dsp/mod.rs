//! Dynamic shrinkage processes.
//!
//! The log-variance path of a dynamic shrinkage prior follows a stationary
//! AR(1) with Z-distributed innovations,
//!
//! ```text
//! h_t = log(τ² λ_t²),    h_{t+1} = μ + φ (h_t − μ) + η_t,
//! η_t ~ Z(α, β, 0, 1),   h_1 = μ + η_0,
//! ```
//!
//! with `α = β = 1/2` giving the dynamic horseshoe. Conditional on
//! Pólya-Gamma precisions `ξ_t ~ PG(α + β, η_t)` the innovations are
//! Gaussian, and conditional on indicators into the ten-component log-χ²₁
//! mixture the observation equation `log(ω_t² + c) ≈ h_t + log χ²₁` is
//! Gaussian too, so the whole path is drawn jointly from a tridiagonal
//! Gaussian system in O(T).

pub mod omori;

use crate::banded::{build_difference_precision, sample_banded_gaussian};
use crate::dists::polya_gamma::sample_polya_gamma;
use crate::dists::slice::slice_sample;
use crate::dists::zdist::{sample_z, ZParams};
use crate::error::{Error, Result};
use omori::OmoriTable;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Gibbs state of one dynamic shrinkage process.
#[derive(Debug, Clone)]
pub struct DspState {
    /// Log-variance path `h_t = log(τ² λ_t²)`.
    pub h: Vec<f64>,
    /// Mixture indicators into the log-χ²₁ table (0-based).
    pub s: Vec<usize>,
    /// Pólya-Gamma precisions: `xi[0]` for the initialization `h_1 − μ`,
    /// `xi[t]` for the innovation into `h_{t+1}`.
    pub xi: Vec<f64>,
    /// Pólya-Gamma precision of the half-Cauchy prior expansion of `μ`.
    pub xi_mu: f64,
    /// Unconditional mean `μ = log τ²`.
    pub mu: f64,
    /// Autocorrelation `φ ∈ (−1, 1)`.
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Hyperparameters of one DSP sweep.
#[derive(Debug, Clone, Copy)]
pub struct DspSweepConfig {
    /// Beta(a, b) prior on (φ + 1)/2.
    pub a_phi: f64,
    pub b_phi: f64,
    /// Prior mean of μ from the half-Cauchy scale of τ.
    pub mu_prior_mean: f64,
    /// Fix φ at a value instead of sampling it (diagnostics, and the static
    /// special case φ = 0).
    pub pin_phi: Option<f64>,
}

/// Offset `c` in the log transform `log(ω² + c)`, scaled to the data:
/// `c = scale · max(var(ω), 10⁻¹⁰)`.
pub fn offset(omega: &[f64], scale: f64) -> f64 {
    let n = omega.len();
    let var = if n > 1 {
        let mean = omega.iter().sum::<f64>() / n as f64;
        omega.iter().map(|w| (w - mean) * (w - mean)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    scale * var.max(1e-10)
}

fn log_offset_transform(omega: &[f64], c: f64) -> Vec<f64> {
    omega.iter().map(|w| (w * w + c).ln()).collect()
}

impl DspState {
    /// Data-driven initialization: `h` is a five-point moving average of
    /// `log(ω² + c)`, indicators pick the nearest mixture mean for the
    /// residual, all Pólya-Gamma precisions start at their `PG(1, 0)` mean
    /// 1/4, and φ starts at 0.8.
    pub fn init(omega: &[f64], c: f64, alpha: f64, beta: f64, table: &OmoriTable) -> Self {
        let t_len = omega.len();
        let raw = log_offset_transform(omega, c);
        let mut h = vec![0.0f64; t_len];
        for t in 0..t_len {
            let lo = t.saturating_sub(2);
            let hi = (t + 2).min(t_len - 1);
            h[t] = raw[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64;
        }
        let mu = h.iter().sum::<f64>() / t_len as f64;
        let s = raw
            .iter()
            .zip(&h)
            .map(|(y, ht)| {
                let resid = y - ht;
                let mut best = 0usize;
                let mut best_d = f64::INFINITY;
                for (i, comp) in table.components().iter().enumerate() {
                    let d = (resid - comp.mean).abs();
                    if d < best_d {
                        best_d = d;
                        best = i;
                    }
                }
                best
            })
            .collect();
        Self {
            h,
            s,
            xi: vec![0.25; t_len],
            xi_mu: 0.25,
            mu,
            phi: 0.8,
            alpha,
            beta,
        }
    }

    /// Shrinkage coefficients `κ_t = 1/(1 + exp h_t)`.
    pub fn kappa(&self) -> Vec<f64> {
        self.h.iter().map(|h| 1.0 / (1.0 + h.exp())).collect()
    }

    /// Scale path `τ λ_t = exp(h_t / 2)`.
    pub fn scale_path(&self) -> Vec<f64> {
        self.h.iter().map(|h| (0.5 * h).exp()).collect()
    }

    /// Innovations implied by the current path: `η_0 = h_1 − μ`,
    /// `η_t = (h_{t+1} − μ) − φ (h_t − μ)`.
    pub fn innovations(&self) -> Vec<f64> {
        let mut eta = Vec::with_capacity(self.h.len());
        eta.push(self.h[0] - self.mu);
        for t in 1..self.h.len() {
            eta.push((self.h[t] - self.mu) - self.phi * (self.h[t - 1] - self.mu));
        }
        eta
    }
}

/// Simulate a log-variance path from the prior.
pub fn forward_simulate<R: Rng + ?Sized>(
    mu: f64,
    phi: f64,
    alpha: f64,
    beta: f64,
    t_len: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if t_len == 0 {
        return Err(Error::invalid("cannot simulate an empty path"));
    }
    if !(phi > -1.0 && phi < 1.0) {
        return Err(Error::invalid(format!("phi must lie in (-1, 1), got {phi}")));
    }
    let z = ZParams::new(alpha, beta, 0.0, 1.0)?;
    let mut h = Vec::with_capacity(t_len);
    h.push(mu + sample_z(&z, rng)?);
    for t in 1..t_len {
        let next = mu + phi * (h[t - 1] - mu) + sample_z(&z, rng)?;
        h.push(next);
    }
    Ok(h)
}

/// Draw mixture indicators for residuals `y_tilde − h` (shared by shrinkage
/// and stochastic-volatility blocks).
pub fn sample_mixture_indicators<R: Rng + ?Sized>(
    y_tilde: &[f64],
    h: &[f64],
    table: &OmoriTable,
    rng: &mut R,
) -> Vec<usize> {
    assert_eq!(y_tilde.len(), h.len());
    let mut logp = vec![0.0f64; table.len()];
    y_tilde
        .iter()
        .zip(h)
        .map(|(y, ht)| {
            let mut max = f64::NEG_INFINITY;
            for (i, comp) in table.components().iter().enumerate() {
                let r = y - ht - comp.mean;
                logp[i] = comp.prob.ln() - 0.5 * comp.var.ln() - 0.5 * r * r / comp.var;
                max = max.max(logp[i]);
            }
            let mut total = 0.0;
            for lp in logp.iter_mut() {
                *lp = (*lp - max).exp();
                total += *lp;
            }
            let mut u = rng.gen::<f64>() * total;
            for (i, p) in logp.iter().enumerate() {
                u -= p;
                if u <= 0.0 {
                    return i;
                }
            }
            table.len() - 1
        })
        .collect()
}

/// Joint draw of a log-variance path given mixture indicators and innovation
/// precisions: the centered path solves a tridiagonal Gaussian system
/// `Q h̃ = Σ_v⁻¹ (ỹ − m − μ) + shift · D_φ'1`, `Q = Σ_v⁻¹ + D_φ' Σ_ξ⁻¹ D_φ`.
pub fn sample_log_variance_path<R: Rng + ?Sized>(
    y_tilde: &[f64],
    s: &[usize],
    table: &OmoriTable,
    xi: &[f64],
    mu: f64,
    phi: f64,
    mean_shift: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let t_len = y_tilde.len();
    if s.len() != t_len || xi.len() != t_len {
        return Err(Error::invalid(
            "indicator/precision lengths do not match the series",
        ));
    }
    let mut v_inv = vec![0.0f64; t_len];
    let mut linear = vec![0.0f64; t_len];
    for t in 0..t_len {
        let comp = table.component(s[t]);
        v_inv[t] = 1.0 / comp.var;
        linear[t] = (y_tilde[t] - comp.mean - mu) / comp.var;
    }
    if mean_shift != 0.0 {
        for t in 0..t_len {
            let col_sum = if t + 1 < t_len { 1.0 - phi } else { 1.0 };
            linear[t] += mean_shift * col_sum;
        }
    }
    let q = build_difference_precision(1, &v_inv, xi, Some(phi))?;
    let centered = sample_banded_gaussian(&q, &linear, rng)?;
    Ok(centered.iter().map(|v| v + mu).collect())
}

/// Update the mixture indicators of a DSP state.
pub fn update_s<R: Rng + ?Sized>(
    state: &mut DspState,
    omega: &[f64],
    c: f64,
    table: &OmoriTable,
    rng: &mut R,
) {
    let y_tilde = log_offset_transform(omega, c);
    state.s = sample_mixture_indicators(&y_tilde, &state.h, table, rng);
}

/// Update the log-variance path of a DSP state.
pub fn update_h<R: Rng + ?Sized>(
    state: &mut DspState,
    omega: &[f64],
    c: f64,
    table: &OmoriTable,
    rng: &mut R,
) -> Result<()> {
    let y_tilde = log_offset_transform(omega, c);
    let shift = 0.5 * (state.alpha - state.beta);
    state.h = sample_log_variance_path(
        &y_tilde, &state.s, table, &state.xi, state.mu, state.phi, shift, rng,
    )?;
    Ok(())
}

/// Update all Pólya-Gamma precisions: `ξ_t ~ PG(α+β, η_t)` including the
/// initialization, and `ξ_μ ~ PG(1, μ − prior mean)` from the half-Cauchy
/// prior on τ.
pub fn update_xi<R: Rng + ?Sized>(
    state: &mut DspState,
    mu_prior_mean: f64,
    rng: &mut R,
) -> Result<()> {
    let b = state.alpha + state.beta;
    let eta = state.innovations();
    for (xi, e) in state.xi.iter_mut().zip(&eta) {
        *xi = sample_polya_gamma(b, *e, rng)?;
    }
    state.xi_mu = sample_polya_gamma(1.0, state.mu - mu_prior_mean, rng)?;
    Ok(())
}

/// Gaussian update of `μ` given the path and Pólya-Gamma precisions.
pub fn update_mu<R: Rng + ?Sized>(
    state: &mut DspState,
    prior_mean: f64,
    rng: &mut R,
) -> Result<()> {
    let shift = 0.5 * (state.alpha - state.beta);
    let t_len = state.h.len();
    let mut q = state.xi_mu + state.xi[0];
    let mut l = state.xi_mu * prior_mean + state.xi[0] * state.h[0] - shift;
    let one_minus_phi = 1.0 - state.phi;
    for t in 1..t_len {
        q += one_minus_phi * one_minus_phi * state.xi[t];
        l += one_minus_phi * (state.xi[t] * (state.h[t] - state.phi * state.h[t - 1]) - shift);
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Numerical(format!(
            "degenerate precision {q} in the mu update"
        )));
    }
    let n: f64 = StandardNormal.sample(rng);
    state.mu = l / q + n / q.sqrt();
    Ok(())
}

/// Slice-sampling update of `φ` under the Beta(a, b) prior on `(φ + 1)/2`.
pub fn update_phi<R: Rng + ?Sized>(
    state: &mut DspState,
    a_phi: f64,
    b_phi: f64,
    rng: &mut R,
) -> Result<()> {
    let shift = 0.5 * (state.alpha - state.beta);
    let centered: Vec<f64> = state.h.iter().map(|h| h - state.mu).collect();
    let xi = state.xi.clone();
    let target = move |phi: f64| {
        let mut lp = (a_phi - 1.0) * (0.5 * (1.0 + phi)).ln()
            + (b_phi - 1.0) * (0.5 * (1.0 - phi)).ln();
        for t in 1..centered.len() {
            let eta = centered[t] - phi * centered[t - 1];
            lp += -0.5 * xi[t] * eta * eta + shift * eta;
        }
        lp
    };
    state.phi = slice_sample(target, state.phi, 1.0, Some((-1.0, 1.0)), rng)?;
    Ok(())
}

/// One full DSP sweep in the order s, h, ξ, μ, φ.
pub fn sweep<R: Rng + ?Sized>(
    state: &mut DspState,
    omega: &[f64],
    c: f64,
    table: &OmoriTable,
    cfg: &DspSweepConfig,
    rng: &mut R,
) -> Result<()> {
    update_s(state, omega, c, table, rng);
    update_h(state, omega, c, table, rng)?;
    update_xi(state, cfg.mu_prior_mean, rng)?;
    update_mu(state, cfg.mu_prior_mean, rng)?;
    match cfg.pin_phi {
        Some(v) => state.phi = v,
        None => update_phi(state, cfg.a_phi, cfg.b_phi, rng)?,
    }
    Ok(())
}

/// A stack of per-predictor shrinkage processes tied together by a global
/// log-scale `μ₀` (the time-varying-parameter hierarchy).
#[derive(Debug, Clone)]
pub struct MultiDspState {
    pub blocks: Vec<DspState>,
    /// Global log-scale `μ₀ = log τ₀²`; the per-predictor means `μ_j` are
    /// conditionally `N(μ₀, ξ_{μ_j}⁻¹)`.
    pub mu0: f64,
    pub xi_mu0: f64,
}

impl MultiDspState {
    pub fn new(blocks: Vec<DspState>) -> Self {
        let mu0 = blocks.iter().map(|b| b.mu).sum::<f64>() / blocks.len().max(1) as f64;
        Self {
            blocks,
            mu0,
            xi_mu0: 0.25,
        }
    }
}

/// Update the global level of the hierarchy: `ξ_{μ₀} ~ PG(1, μ₀ − m₀)` and a
/// Gaussian draw of `μ₀` pooling the per-predictor means.
pub fn update_hierarchy<R: Rng + ?Sized>(
    multi: &mut MultiDspState,
    mu0_prior_mean: f64,
    rng: &mut R,
) -> Result<()> {
    multi.xi_mu0 = sample_polya_gamma(1.0, multi.mu0 - mu0_prior_mean, rng)?;
    let mut q = multi.xi_mu0;
    let mut l = multi.xi_mu0 * mu0_prior_mean;
    for block in &multi.blocks {
        q += block.xi_mu;
        l += block.xi_mu * block.mu;
    }
    let n: f64 = StandardNormal.sample(rng);
    multi.mu0 = l / q + n / q.sqrt();
    Ok(())
}
