//! Special distributions underpinning dynamic shrinkage processes.
//!
//! * [`polya_gamma`] — exact Pólya-Gamma sampling for shape 1 and a truncated
//!   infinite-convolution sampler for general shape.
//! * [`zdist`] — the Z (generalized logistic type IV) distribution of
//!   log-variance innovations, sampled through its conditionally Gaussian
//!   mixture representation.
//! * [`tpb`] — the three-parameter beta density of one-step shrinkage
//!   coefficient transitions.
//! * [`slice`] — univariate slice sampling for the non-conjugate scalar
//!   updates.

pub mod polya_gamma;
pub mod slice;
pub mod tpb;
pub mod zdist;

pub use polya_gamma::sample_polya_gamma;
pub use slice::slice_sample;
pub use tpb::{tpb_density, TpbParams};
pub use zdist::{sample_z, z_log_density, ZParams};
