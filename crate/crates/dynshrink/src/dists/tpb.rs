//! The three-parameter beta (TPB) distribution on (0, 1).
//!
//! `TPB(s₁, s₂, γ)` has density
//!
//! ```text
//! f(κ) = B(s₁, s₂)⁻¹ γ^{s₁} κ^{s₁−1} (1 − κ)^{s₂−1} [1 + (γ − 1) κ]^{−(s₁+s₂)},
//! ```
//!
//! reducing to `Beta(s₁, s₂)` at `γ = 1`. It is the one-step transition law of
//! the shrinkage coefficients `κ_t = 1/(1 + τ²λ_t²)` of a dynamic shrinkage
//! process: conditional on the past, `κ_{t+1} ~ TPB(β, α, γ_t)` where `γ_t`
//! collects the autoregressive carry-over `τ^{2(1−φ)} [(1−κ_t)/κ_t]^φ`.

use crate::error::{Error, Result};
use statrs::function::beta::ln_beta;

/// Parameters of `TPB(s₁, s₂, γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpbParams {
    pub shape1: f64,
    pub shape2: f64,
    pub gamma: f64,
}

impl TpbParams {
    pub fn new(shape1: f64, shape2: f64, gamma: f64) -> Result<Self> {
        if !(shape1 > 0.0) || !(shape2 > 0.0) || !(gamma > 0.0) {
            return Err(Error::invalid(format!(
                "TPB parameters must be positive, got ({shape1}, {shape2}, {gamma})"
            )));
        }
        Ok(Self {
            shape1,
            shape2,
            gamma,
        })
    }
}

/// Log density of `TPB(s₁, s₂, γ)` at `kappa` in (0, 1).
pub fn tpb_log_density(kappa: f64, params: &TpbParams) -> Result<f64> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::invalid(format!(
            "TPB support is (0, 1), got {kappa}"
        )));
    }
    let s = params.shape1 + params.shape2;
    Ok(-ln_beta(params.shape1, params.shape2) + params.shape1 * params.gamma.ln()
        + (params.shape1 - 1.0) * kappa.ln()
        + (params.shape2 - 1.0) * (1.0 - kappa).ln()
        - s * ((params.gamma - 1.0) * kappa).ln_1p())
}

/// Density of `TPB(s₁, s₂, γ)` at `kappa` in (0, 1).
pub fn tpb_density(kappa: f64, params: &TpbParams) -> Result<f64> {
    tpb_log_density(kappa, params).map(f64::exp)
}
