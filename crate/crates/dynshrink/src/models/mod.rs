//! Model fitting: Bayesian trend filtering and time-varying-parameter
//! regression under dynamic shrinkage, static horseshoe, or normal-inverse-
//! gamma priors on the differenced coefficient paths.
//!
//! Both models share one Gibbs core. Trend filtering is the `p = 1`,
//! intercept-only special case of the regression
//!
//! ```text
//! y_t = x_t' β_t + ε_t,     Δᴰ β_{j,t} = ω_{j,t},
//! ω_{j,t} ~ N(0, τ₀² τ_j² λ_{j,t}²),
//! ```
//!
//! and a sweep alternates: a joint banded draw of all `β`, the shrinkage
//! block for each predictor's log-variance path, the observation-error
//! update (constant variance or stochastic volatility), and data
//! augmentation for missing observations.

mod beta_update;
mod obs;

pub use beta_update::{update_beta_btf, update_beta_tvp};
pub use obs::{fit_sv_observation, update_sigma_eps, SvState};

use crate::banded::apply_difference;
use crate::dsp::omori::OmoriTable;
use crate::dsp::{
    offset, sweep, update_hierarchy, DspState, DspSweepConfig, MultiDspState,
};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

/// Prior family on the differenced coefficient innovations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorFamily {
    /// Dynamic horseshoe: AR(1) log-variance with Z(1/2, 1/2) innovations.
    Dhs,
    /// Static horseshoe: the φ = 0 special case (independent local scales).
    Hs,
    /// Normal–inverse-gamma: a single learned innovation variance.
    Nig,
}

/// Observation-error model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObsError {
    /// Constant variance with a Jeffreys prior on σ_ε.
    Constant,
    /// Log-AR(1) stochastic volatility.
    Sv,
}

/// Trend-filtering model: `y_t = β_t + ε_t` with a shrinkage prior on the
/// `d`-th differences of β.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BtfModelSpec {
    /// Difference order (1 or 2).
    pub d: usize,
    pub prior: PriorFamily,
    pub obs_error: ObsError,
}

impl Default for BtfModelSpec {
    fn default() -> Self {
        Self {
            d: 2,
            prior: PriorFamily::Dhs,
            obs_error: ObsError::Constant,
        }
    }
}

/// Time-varying-parameter regression model; the number of predictors comes
/// from the design matrix at fit time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TvpModelSpec {
    /// Difference order on each coefficient path (1 or 2).
    pub d: usize,
    pub prior: PriorFamily,
    pub obs_error: ObsError,
}

impl Default for TvpModelSpec {
    fn default() -> Self {
        Self {
            d: 1,
            prior: PriorFamily::Dhs,
            obs_error: ObsError::Constant,
        }
    }
}

/// MCMC run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McmcConfig {
    /// Total sweeps per chain, including burn-in.
    pub n_iter: usize,
    /// Sweeps discarded from the start of each chain.
    pub burn: usize,
    /// Keep every `thin`-th sweep after burn-in.
    pub thin: usize,
    /// Independent chains (distinct RNG streams of the same seed).
    pub chains: usize,
    pub seed: u64,
    /// Beta(a, b) prior on (φ + 1)/2 for every autocorrelation parameter.
    pub a_phi: f64,
    pub b_phi: f64,
    /// Scale of the offset in the log-variance transform.
    pub offset_scale: f64,
    /// Fix the shrinkage autocorrelation φ instead of sampling it. Intended
    /// for diagnostics (φ = 0 reduces the dynamic prior to the static one).
    pub pin_phi: Option<f64>,
}

impl McmcConfig {
    pub fn default_with_seed(seed: u64) -> Self {
        Self {
            n_iter: 10_000,
            burn: 5_000,
            thin: 5,
            chains: 1,
            seed,
            a_phi: 10.0,
            b_phi: 2.0,
            offset_scale: 1e-10,
            pin_phi: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_iter == 0 || self.burn >= self.n_iter {
            return Err(Error::invalid(format!(
                "need burn < n_iter, got burn = {}, n_iter = {}",
                self.burn, self.n_iter
            )));
        }
        if self.thin == 0 {
            return Err(Error::invalid("thin must be at least 1"));
        }
        if self.chains == 0 {
            return Err(Error::invalid("need at least one chain"));
        }
        if !(self.a_phi > 0.0) || !(self.b_phi > 0.0) {
            return Err(Error::invalid("phi prior shapes must be positive"));
        }
        if !(self.offset_scale > 0.0) {
            return Err(Error::invalid("offset scale must be positive"));
        }
        if let Some(phi) = self.pin_phi {
            if !(phi > -1.0 && phi < 1.0) {
                return Err(Error::invalid(format!(
                    "pinned phi must lie in (-1, 1), got {phi}"
                )));
            }
        }
        Ok(())
    }

    fn n_retained(&self) -> usize {
        (self.n_iter - self.burn).div_ceil(self.thin)
    }
}

/// Metadata describing how a set of draws was produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DrawMeta {
    pub n_iter: usize,
    pub burn: usize,
    pub thin: usize,
    pub chains: usize,
    pub seed: u64,
    pub prior: PriorFamily,
    pub obs_error: ObsError,
    pub d: usize,
    /// Offsets used in the log-variance transform, one per predictor.
    pub offsets: Vec<f64>,
}

/// Retained posterior draws. Vector-valued quantities over time and
/// predictors are stacked time-major: index `(t, j) → t·p + j`.
#[derive(Debug, Clone)]
pub struct ModelDraws {
    pub t_len: usize,
    pub p: usize,
    /// Coefficient paths, `T·p` per draw.
    pub beta: Vec<Vec<f64>>,
    /// Shrinkage log-variance paths `h_{j,t} = log(τ² λ_{j,t}²)`, `T·p` per
    /// draw (constant in `t` under the NIG prior).
    pub h: Vec<Vec<f64>>,
    /// Shrinkage autocorrelations, one per predictor (zero for static
    /// priors).
    pub phi: Vec<Vec<f64>>,
    /// Log-scales: `μ_j` per predictor, with the global `μ₀` appended when
    /// `p > 1`.
    pub mu: Vec<Vec<f64>>,
    /// Observation scale: `[σ_ε]`, or the volatility path `σ_t` (length `T`)
    /// under stochastic volatility.
    pub sigma: Vec<Vec<f64>>,
    /// Imputed values for missing observations, aligned with `missing_idx`.
    pub imputed: Vec<Vec<f64>>,
    pub missing_idx: Vec<usize>,
    pub meta: DrawMeta,
}

impl ModelDraws {
    pub fn n_draws(&self) -> usize {
        self.beta.len()
    }

    /// Posterior mean of the stacked coefficient vector.
    pub fn posterior_mean_beta(&self) -> Vec<f64> {
        let mut mean = vec![0.0f64; self.t_len * self.p];
        for draw in &self.beta {
            for (m, v) in mean.iter_mut().zip(draw) {
                *m += v;
            }
        }
        let n = self.n_draws().max(1) as f64;
        for m in mean.iter_mut() {
            *m /= n;
        }
        mean
    }

    /// Coefficient path draws for predictor `j`: one length-`T` vector per
    /// retained draw.
    pub fn beta_paths(&self, j: usize) -> Vec<Vec<f64>> {
        assert!(j < self.p, "predictor index out of range");
        self.beta
            .iter()
            .map(|draw| (0..self.t_len).map(|t| draw[t * self.p + j]).collect())
            .collect()
    }

    /// Draws of the innovation scale `τ λ_{j,t} = exp(h_{j,t}/2)` at one
    /// time point.
    pub fn scale_draws_at(&self, j: usize, t: usize) -> Vec<f64> {
        assert!(j < self.p && t < self.t_len);
        self.h
            .iter()
            .map(|draw| (0.5 * draw[t * self.p + j]).exp())
            .collect()
    }

    /// Fitted-value draws `x_t'β_t` (for trend filtering simply β).
    pub fn fitted_paths(&self, x: Option<&[f64]>) -> Vec<Vec<f64>> {
        self.beta
            .iter()
            .map(|draw| {
                (0..self.t_len)
                    .map(|t| match x {
                        None => draw[t * self.p],
                        Some(xs) => (0..self.p)
                            .map(|j| xs[t * self.p + j] * draw[t * self.p + j])
                            .sum(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Fit Bayesian trend filtering. `missing[t]` marks `y[t]` as unobserved;
/// masked entries of `y` are ignored and imputed by data augmentation.
pub fn fit_btf(
    y: &[f64],
    missing: &[bool],
    spec: &BtfModelSpec,
    config: &McmcConfig,
) -> Result<ModelDraws> {
    fit_core(
        y,
        missing,
        None,
        1,
        spec.d,
        spec.prior,
        spec.obs_error,
        config,
    )
}

/// Fit the time-varying-parameter regression with design matrix `x`
/// (row-major `T × p`). A single column of ones reduces exactly — bit for
/// bit — to [`fit_btf`].
pub fn fit_tvp(
    y: &[f64],
    missing: &[bool],
    x: &[f64],
    p: usize,
    spec: &TvpModelSpec,
    config: &McmcConfig,
) -> Result<ModelDraws> {
    if p == 0 {
        return Err(Error::invalid("need at least one predictor"));
    }
    if x.len() != y.len() * p {
        return Err(Error::invalid(format!(
            "design matrix has {} entries, expected {} x {}",
            x.len(),
            y.len(),
            p
        )));
    }
    if let Some(v) = x.iter().find(|v| !v.is_finite()) {
        return Err(Error::data(format!("non-finite design entry {v}")));
    }
    let intercept_only = p == 1 && x.iter().all(|&v| v == 1.0);
    let x_arg = if intercept_only { None } else { Some(x) };
    fit_core(y, missing, x_arg, p, spec.d, spec.prior, spec.obs_error, config)
}

/// Prior-mean of the global log-scale `μ₀ = log τ₀²` for each variant: the
/// half-Cauchy scale of τ₀ is `σ_ε/√(Tp)` (constant errors), `1/√(Tp)`
/// (stochastic volatility), or 1 (static horseshoe).
fn mu_prior_mean(prior: PriorFamily, obs: ObsError, sigma: f64, n_scale: f64) -> f64 {
    match (prior, obs) {
        (PriorFamily::Hs, _) => 0.0,
        (_, ObsError::Constant) => (sigma * sigma / n_scale).ln(),
        (_, ObsError::Sv) => -n_scale.ln(),
    }
}

enum PriorBlock {
    Shrinkage(MultiDspState),
    Nig { tau2: f64 },
}

enum ObsBlock {
    Constant { sigma: f64 },
    Sv(SvState),
}

struct ChainState {
    beta: Vec<f64>,
    y_work: Vec<f64>,
    prior_block: PriorBlock,
    obs_block: ObsBlock,
    /// Fixed log-transform offsets, one per predictor.
    offsets: Vec<f64>,
}

#[allow(clippy::too_many_arguments)]
fn fit_core(
    y: &[f64],
    missing: &[bool],
    x: Option<&[f64]>,
    p: usize,
    d: usize,
    prior: PriorFamily,
    obs: ObsError,
    config: &McmcConfig,
) -> Result<ModelDraws> {
    config.validate()?;
    let t_len = y.len();
    if missing.len() != t_len {
        return Err(Error::invalid(format!(
            "missing mask length {} does not match series length {t_len}",
            missing.len()
        )));
    }
    if d == 0 || d > 2 {
        return Err(Error::invalid(format!("difference order must be 1 or 2, got {d}")));
    }
    if t_len < 2 * d + 1 {
        return Err(Error::data(format!(
            "need at least {} observations for difference order {d}, got {t_len}",
            2 * d + 1
        )));
    }
    let missing_idx: Vec<usize> = (0..t_len).filter(|&t| missing[t]).collect();
    if missing_idx.len() == t_len {
        return Err(Error::data("all observations are missing"));
    }
    for t in 0..t_len {
        if !missing[t] && !y[t].is_finite() {
            return Err(Error::data(format!(
                "non-finite observation {} at position {t}",
                y[t]
            )));
        }
    }

    let table = OmoriTable::standard();
    let mut all = Vec::with_capacity(config.chains);
    for chain in 0..config.chains {
        let mut rng = RngStream::new(config.seed, chain as u64);
        all.push(run_chain(
            y, missing, &missing_idx, x, p, d, prior, obs, config, &table, &mut rng,
        )?);
    }
    let mut merged = all.remove(0);
    for mut extra in all {
        merged.beta.append(&mut extra.beta);
        merged.h.append(&mut extra.h);
        merged.phi.append(&mut extra.phi);
        merged.mu.append(&mut extra.mu);
        merged.sigma.append(&mut extra.sigma);
        merged.imputed.append(&mut extra.imputed);
    }
    Ok(merged)
}

#[allow(clippy::too_many_arguments)]
fn run_chain(
    y: &[f64],
    missing: &[bool],
    missing_idx: &[usize],
    x: Option<&[f64]>,
    p: usize,
    d: usize,
    prior: PriorFamily,
    obs: ObsError,
    config: &McmcConfig,
    table: &OmoriTable,
    rng: &mut RngStream,
) -> Result<ModelDraws> {
    let t_len = y.len();
    let n_scale = (t_len * p) as f64;
    let mut state = init_chain(y, missing, x, p, d, prior, obs, config, table)?;
    let n_keep = config.n_retained();
    let mut draws = ModelDraws {
        t_len,
        p,
        beta: Vec::with_capacity(n_keep),
        h: Vec::with_capacity(n_keep),
        phi: Vec::with_capacity(n_keep),
        mu: Vec::with_capacity(n_keep),
        sigma: Vec::with_capacity(n_keep),
        imputed: Vec::with_capacity(n_keep),
        missing_idx: missing_idx.to_vec(),
        meta: DrawMeta {
            n_iter: config.n_iter,
            burn: config.burn,
            thin: config.thin,
            chains: config.chains,
            seed: config.seed,
            prior,
            obs_error: obs,
            d,
            offsets: state.offsets.clone(),
        },
    };

    for iter in 0..config.n_iter {
        sweep_once(&mut state, missing, x, p, d, prior, obs, config, table, n_scale, rng)?;
        if iter >= config.burn && (iter - config.burn) % config.thin == 0 {
            record_draw(&mut draws, &state, missing_idx);
        }
    }
    Ok(draws)
}

#[allow(clippy::too_many_arguments)]
fn init_chain(
    y: &[f64],
    missing: &[bool],
    x: Option<&[f64]>,
    p: usize,
    d: usize,
    prior: PriorFamily,
    obs: ObsError,
    config: &McmcConfig,
    table: &OmoriTable,
) -> Result<ChainState> {
    let t_len = y.len();
    let y_work = interpolate_missing(y, missing);

    // Initial coefficient paths: the interpolated series itself for trend
    // filtering; a single ridge-smoothed draw-free solve for regression.
    let beta = match x {
        None => y_work.clone(),
        Some(xs) => beta_update::ridge_init(&y_work, xs, p, d)?,
    };

    let mut offsets = Vec::with_capacity(p);
    let mut blocks = Vec::with_capacity(p);
    let mut nig_tau2 = 1.0;
    match prior {
        PriorFamily::Nig => {
            let omega = stacked_differences(&beta, t_len, p, d)?;
            let var = omega.iter().map(|w| w * w).sum::<f64>() / omega.len() as f64;
            nig_tau2 = var.max(1e-8);
            offsets.push(offset(&omega, config.offset_scale));
        }
        _ => {
            for j in 0..p {
                let path: Vec<f64> = (0..t_len).map(|t| beta[t * p + j]).collect();
                let omega = apply_difference(&path, d, None)?;
                let c = offset(&omega, config.offset_scale);
                let mut block = DspState::init(&omega, c, 0.5, 0.5, table);
                if let Some(phi) = pinned_phi(prior, config) {
                    block.phi = phi;
                }
                offsets.push(c);
                blocks.push(block);
            }
        }
    }
    let prior_block = match prior {
        PriorFamily::Nig => PriorBlock::Nig { tau2: nig_tau2 },
        _ => PriorBlock::Shrinkage(MultiDspState::new(blocks)),
    };

    let fitted = fitted_values(&beta, x, t_len, p);
    let resid: Vec<f64> = y_work.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    let obs_block = match obs {
        ObsError::Constant => ObsBlock::Constant {
            sigma: initial_sigma(&y_work),
        },
        ObsError::Sv => ObsBlock::Sv(SvState::init(&resid, config.offset_scale, table)),
    };

    Ok(ChainState {
        beta,
        y_work,
        prior_block,
        obs_block,
        offsets,
    })
}

/// The effective pinned autocorrelation: the static horseshoe always fixes
/// φ = 0; the dynamic prior honors an explicit diagnostic pin.
fn pinned_phi(prior: PriorFamily, config: &McmcConfig) -> Option<f64> {
    match prior {
        PriorFamily::Hs => Some(0.0),
        PriorFamily::Dhs => config.pin_phi,
        PriorFamily::Nig => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_once(
    state: &mut ChainState,
    missing: &[bool],
    x: Option<&[f64]>,
    p: usize,
    d: usize,
    prior: PriorFamily,
    obs: ObsError,
    config: &McmcConfig,
    table: &OmoriTable,
    n_scale: f64,
    rng: &mut RngStream,
) -> Result<()> {
    let t_len = state.y_work.len();

    // Coefficient paths given variances.
    let innov_prec = innovation_precisions(&state.prior_block, t_len, p);
    let obs_prec = observation_precisions(&state.obs_block, t_len);
    state.beta = match x {
        None => update_beta_btf(&state.y_work, &obs_prec, &innov_prec, d, rng)?,
        Some(xs) => update_beta_tvp(&state.y_work, xs, p, &obs_prec, &innov_prec, d, rng)?,
    };

    // Shrinkage block given the new innovations.
    let sigma_now = current_sigma_scalar(&state.obs_block);
    match &mut state.prior_block {
        PriorBlock::Nig { tau2 } => {
            let omega = stacked_differences(&state.beta, t_len, p, d)?;
            let shape = 0.001 + 0.5 * omega.len() as f64;
            let rate = 0.001 + 0.5 * omega.iter().map(|w| w * w).sum::<f64>();
            let gamma = Gamma::new(shape, 1.0 / rate)
                .map_err(|e| Error::Numerical(format!("invalid tau update: {e}")))?;
            let prec: f64 = gamma.sample(rng);
            *tau2 = 1.0 / prec;
        }
        PriorBlock::Shrinkage(multi) => {
            let base = mu_prior_mean(prior, obs, sigma_now, n_scale);
            if p == 1 {
                let omega = apply_difference(&state.beta, d, None)?;
                let cfg = DspSweepConfig {
                    a_phi: config.a_phi,
                    b_phi: config.b_phi,
                    mu_prior_mean: base,
                    pin_phi: pinned_phi(prior, config),
                };
                sweep(&mut multi.blocks[0], &omega, state.offsets[0], table, &cfg, rng)?;
                multi.mu0 = multi.blocks[0].mu;
            } else {
                let mut path = vec![0.0f64; t_len];
                for j in 0..p {
                    for t in 0..t_len {
                        path[t] = state.beta[t * p + j];
                    }
                    let omega = apply_difference(&path, d, None)?;
                    let cfg = DspSweepConfig {
                        a_phi: config.a_phi,
                        b_phi: config.b_phi,
                        mu_prior_mean: multi.mu0,
                        pin_phi: pinned_phi(prior, config),
                    };
                    sweep(&mut multi.blocks[j], &omega, state.offsets[j], table, &cfg, rng)?;
                }
                update_hierarchy(multi, base, rng)?;
            }
        }
    }

    // Observation error given residuals.
    let fitted = fitted_values(&state.beta, x, t_len, p);
    let resid: Vec<f64> = state.y_work.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    match &mut state.obs_block {
        ObsBlock::Constant { sigma } => {
            let coupling = match prior {
                PriorFamily::Dhs => {
                    let tau2 = match &state.prior_block {
                        PriorBlock::Shrinkage(multi) => multi.mu0.exp(),
                        PriorBlock::Nig { tau2 } => *tau2,
                    };
                    Some((tau2, n_scale))
                }
                _ => None,
            };
            *sigma = update_sigma_eps(&resid, *sigma, coupling, rng)?;
        }
        ObsBlock::Sv(sv) => {
            fit_sv_observation(sv, &resid, table, config.a_phi, config.b_phi, rng)?;
        }
    }

    // Data augmentation for missing observations.
    let sigmas = observation_sigmas(&state.obs_block, t_len);
    for t in 0..t_len {
        if missing[t] {
            let e: f64 = StandardNormal.sample(rng);
            state.y_work[t] = fitted[t] + sigmas[t] * e;
        }
    }
    Ok(())
}

fn record_draw(draws: &mut ModelDraws, state: &ChainState, missing_idx: &[usize]) {
    let t_len = draws.t_len;
    let p = draws.p;
    draws.beta.push(state.beta.clone());
    match &state.prior_block {
        PriorBlock::Shrinkage(multi) => {
            let mut h = vec![0.0f64; t_len * p];
            for (j, block) in multi.blocks.iter().enumerate() {
                for t in 0..t_len {
                    h[t * p + j] = block.h[t];
                }
            }
            draws.h.push(h);
            draws.phi.push(multi.blocks.iter().map(|b| b.phi).collect());
            let mut mu: Vec<f64> = multi.blocks.iter().map(|b| b.mu).collect();
            if p > 1 {
                mu.push(multi.mu0);
            }
            draws.mu.push(mu);
        }
        PriorBlock::Nig { tau2 } => {
            draws.h.push(vec![tau2.ln(); t_len * p]);
            draws.phi.push(vec![0.0; p]);
            draws.mu.push(vec![tau2.ln(); if p > 1 { p + 1 } else { 1 }]);
        }
    }
    match &state.obs_block {
        ObsBlock::Constant { sigma } => draws.sigma.push(vec![*sigma]),
        ObsBlock::Sv(sv) => draws.sigma.push(sv.sigma_path()),
    }
    draws
        .imputed
        .push(missing_idx.iter().map(|&t| state.y_work[t]).collect());
}

fn innovation_precisions(prior_block: &PriorBlock, t_len: usize, p: usize) -> Vec<f64> {
    match prior_block {
        PriorBlock::Nig { tau2 } => vec![(1.0 / tau2).min(1e300); t_len * p],
        PriorBlock::Shrinkage(multi) => {
            let mut w = vec![0.0f64; t_len * p];
            for (j, block) in multi.blocks.iter().enumerate() {
                for t in 0..t_len {
                    w[t * p + j] = (-block.h[t]).exp().min(1e300);
                }
            }
            w
        }
    }
}

fn observation_precisions(obs_block: &ObsBlock, t_len: usize) -> Vec<f64> {
    match obs_block {
        ObsBlock::Constant { sigma } => vec![1.0 / (sigma * sigma); t_len],
        ObsBlock::Sv(sv) => sv.h.iter().map(|h| (-h).exp().min(1e300)).collect(),
    }
}

fn observation_sigmas(obs_block: &ObsBlock, t_len: usize) -> Vec<f64> {
    match obs_block {
        ObsBlock::Constant { sigma } => vec![*sigma; t_len],
        ObsBlock::Sv(sv) => sv.sigma_path(),
    }
}

fn current_sigma_scalar(obs_block: &ObsBlock) -> f64 {
    match obs_block {
        ObsBlock::Constant { sigma } => *sigma,
        // Under stochastic volatility the half-Cauchy scale of τ is fixed at
        // 1/√(Tp), so this value is unused by `mu_prior_mean`.
        ObsBlock::Sv(_) => 1.0,
    }
}

fn fitted_values(beta: &[f64], x: Option<&[f64]>, t_len: usize, p: usize) -> Vec<f64> {
    match x {
        None => beta.to_vec(),
        Some(xs) => (0..t_len)
            .map(|t| (0..p).map(|j| xs[t * p + j] * beta[t * p + j]).sum())
            .collect(),
    }
}

/// All differenced paths stacked time-major, matching the innovation layout.
fn stacked_differences(beta: &[f64], t_len: usize, p: usize, d: usize) -> Result<Vec<f64>> {
    if p == 1 {
        return apply_difference(beta, d, None);
    }
    let mut out = vec![0.0f64; t_len * p];
    let mut path = vec![0.0f64; t_len];
    for j in 0..p {
        for t in 0..t_len {
            path[t] = beta[t * p + j];
        }
        let diff = apply_difference(&path, d, None)?;
        for t in 0..t_len {
            out[t * p + j] = diff[t];
        }
    }
    Ok(out)
}

/// Fill masked entries by linear interpolation between the nearest observed
/// neighbors (constant extrapolation at the ends).
fn interpolate_missing(y: &[f64], missing: &[bool]) -> Vec<f64> {
    let t_len = y.len();
    let observed: Vec<usize> = (0..t_len).filter(|&t| !missing[t]).collect();
    let mut out = vec![0.0f64; t_len];
    for t in 0..t_len {
        if !missing[t] {
            out[t] = y[t];
            continue;
        }
        let next = observed.partition_point(|&o| o < t);
        out[t] = match (next.checked_sub(1).map(|i| observed[i]), observed.get(next)) {
            (Some(lo), Some(&hi)) => {
                let w = (t - lo) as f64 / (hi - lo) as f64;
                y[lo] * (1.0 - w) + y[hi] * w
            }
            (Some(lo), None) => y[lo],
            (None, Some(&hi)) => y[hi],
            (None, None) => 0.0,
        };
    }
    out
}

/// Noise-scale starting value: the standard deviation of first differences
/// over √2, which is unbiased for σ_ε when the underlying trend is smooth.
fn initial_sigma(y: &[f64]) -> f64 {
    if y.len() < 2 {
        return 1.0;
    }
    let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>()
        / diffs.len().max(2) as f64;
    (var / 2.0).sqrt().max(1e-6)
}
