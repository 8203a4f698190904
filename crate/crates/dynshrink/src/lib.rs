//! Dynamic shrinkage processes for locally adaptive Bayesian time series models.
//!
//! This crate implements dependent global-local shrinkage priors in which the
//! log-variance of the innovations follows an AR(1) process with Z-distributed
//! errors. The special case with Z(1/2, 1/2, 0, 1) innovations — the *dynamic
//! horseshoe* — extends the horseshoe prior so that the amount of shrinkage
//! applied at time `t` borrows strength from its neighbors. Two models built on
//! this process are provided, each with a linear-time Gibbs sampler:
//!
//! * **Bayesian trend filtering** ([`models::fit_btf`]): shrinkage on the
//!   `D`-th differences of a latent mean, yielding adaptive piecewise
//!   polynomial fits.
//! * **Time-varying-parameter regression** ([`models::fit_tvp`]): per-predictor
//!   dynamic shrinkage of `D`-th differences of regression coefficient paths.
//!
//! Both samplers reduce every joint Gaussian draw to a banded Cholesky
//! factorization ([`banded`]), so the cost per sweep is `O(T)` for trend
//! filtering and `O(T p^3)` for regression with `p` predictors. The conditional
//! conjugacy that makes this possible comes from a Pólya-Gamma parameter
//! expansion of the Z-distribution ([`dists`]) combined with a 10-component
//! Gaussian mixture approximation to the log-χ²₁ likelihood ([`dsp::omori`]).
//!
//! Posterior summaries — pointwise HPD intervals, simultaneous credible bands,
//! simultaneous band scores, and global Bayesian p-values — live in
//! [`inference`]. Simulation designs, CSV ingestion with grid expansion for
//! unequally spaced data, and the runtime benchmark are in [`data`] and
//! [`runner`], all of which back the `dynshrink` command-line tool.
//!
//! ```
//! use dynshrink::data::simulate_donoho;
//! use dynshrink::models::{fit_btf, BtfModelSpec, McmcConfig};
//!
//! let data = simulate_donoho("blocks", 64, 7.0, 7).unwrap();
//! let config = McmcConfig { n_iter: 400, burn: 200, thin: 2, ..McmcConfig::default_with_seed(7) };
//! let draws = fit_btf(&data.y, &data.missing_mask(), &BtfModelSpec::default(), &config).unwrap();
//! let mean = draws.posterior_mean_beta();
//! assert_eq!(mean.len(), 64);
//! ```

pub mod banded;
pub mod cli;
pub mod data;
pub mod dists;
pub mod dsp;
pub mod error;
pub mod inference;
pub mod models;
pub mod rng;
pub mod runner;
pub mod stats;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use rng::RngStream;
