//! The Z distribution (generalized logistic type IV).
//!
//! `Z(α, β, μ, σ)` has density
//!
//! ```text
//! f(z) = [σ B(α, β)]⁻¹ · e^{α u} · (1 + e^u)^{−(α+β)},   u = (z − μ)/σ,
//! ```
//!
//! and arises as the law of a log-variance innovation: if `λ² = e^η` with
//! `η ~ Z(α, β, 0, 1)`, the shrinkage coefficient `κ = 1/(1 + λ²)` is
//! `Beta(β, α)`. That bijection gives an exact sampler: draw
//! `κ ~ Beta(β, α)` and return `η = log((1 − κ)/κ)`. (The Pólya-Gamma
//! augmentation enters only through the Gibbs conditionals
//! `η | ξ ~ N((α − β)/(2ξ), 1/ξ)` and `ξ | η ~ PG(α + β, η)`; the marginal
//! law of ξ under that joint is a tilted Pólya-Gamma, so composing
//! `ξ ~ PG(α + β, 0)` with the Gaussian conditional would not reproduce Z.)

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Beta as BetaDist, Distribution};
use statrs::function::beta::ln_beta;

/// Parameters of `Z(α, β, μ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub sigma: f64,
}

impl ZParams {
    pub fn new(alpha: f64, beta: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::invalid(format!(
                "Z shapes must be positive, got alpha = {alpha}, beta = {beta}"
            )));
        }
        if !mu.is_finite() || !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid(format!(
                "Z location/scale invalid: mu = {mu}, sigma = {sigma}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            mu,
            sigma,
        })
    }

    /// The standard dynamic-horseshoe innovation law `Z(1/2, 1/2, 0, 1)`.
    pub fn horseshoe() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.5,
            mu: 0.0,
            sigma: 1.0,
        }
    }
}

/// Log density of `Z(α, β, μ, σ)` at `z`.
pub fn z_log_density(z: f64, params: &ZParams) -> f64 {
    let u = (z - params.mu) / params.sigma;
    // log(1 + e^u) evaluated without overflow for large |u|.
    let softplus = u.max(0.0) + (-u.abs()).exp().ln_1p();
    -params.sigma.ln() - ln_beta(params.alpha, params.beta) + params.alpha * u
        - (params.alpha + params.beta) * softplus
}

/// Draw from `Z(α, β, μ, σ)` via the beta representation of the shrinkage
/// coefficient.
pub fn sample_z<R: Rng + ?Sized>(params: &ZParams, rng: &mut R) -> Result<f64> {
    let beta = BetaDist::new(params.beta, params.alpha)
        .map_err(|e| Error::invalid(format!("invalid Z shapes: {e}")))?;
    loop {
        let kappa: f64 = beta.sample(rng);
        // Guard against the sampler rounding to an endpoint for shapes < 1.
        if kappa > 0.0 && kappa < 1.0 {
            let eta = (1.0 - kappa).ln() - kappa.ln();
            return Ok(params.mu + params.sigma * eta);
        }
    }
}
