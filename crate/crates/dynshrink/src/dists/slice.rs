//! Univariate slice sampling (Neal 2003).
//!
//! One transition of the slice sampler targeting an unnormalized log density:
//! draw a height under the density at the current point, expand an interval
//! by doubling until it brackets the slice, then shrink uniformly until a
//! point inside the slice is found. The plain doubling expansion used here is
//! exact for unimodal targets, which covers every conditional this crate
//! slices (autocorrelation and scale parameters on bounded or log-concave
//! domains).

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Exp1};

const MAX_EXPANSIONS: usize = 200;
const MAX_SHRINKS: usize = 1000;

/// One slice-sampling transition from `x0` for the target `log_density`.
///
/// `width` is the initial bracket size (1.0 is a good default for standardized
/// parameters); `bounds` restricts the support to an open interval and the
/// returned point lies strictly inside it. The current point must have finite
/// log density.
pub fn slice_sample<R: Rng + ?Sized, F: Fn(f64) -> f64>(
    log_density: F,
    x0: f64,
    width: f64,
    bounds: Option<(f64, f64)>,
    rng: &mut R,
) -> Result<f64> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::invalid(format!("slice width must be positive, got {width}")));
    }
    let (lo, hi) = bounds.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    if !(lo < hi) {
        return Err(Error::invalid(format!("invalid slice bounds ({lo}, {hi})")));
    }
    if !(x0 > lo && x0 < hi) || !x0.is_finite() {
        return Err(Error::invalid(format!(
            "slice start {x0} outside support ({lo}, {hi})"
        )));
    }
    let g = |x: f64| {
        if x > lo && x < hi {
            log_density(x)
        } else {
            f64::NEG_INFINITY
        }
    };
    let f0 = g(x0);
    if !f0.is_finite() {
        return Err(Error::Numerical(format!(
            "slice sampler started at a point with non-finite log density ({f0} at {x0})"
        )));
    }
    let e: f64 = Exp1.sample(rng);
    let level = f0 - e;

    // Place the initial bracket uniformly around x0, then double toward
    // whichever side still lies inside the slice, stopping at the bounds.
    let u: f64 = rng.gen();
    let mut left = x0 - width * u;
    let mut right = left + width;
    if left < lo {
        left = lo;
    }
    if right > hi {
        right = hi;
    }
    for _ in 0..MAX_EXPANSIONS {
        let need_left = left > lo && g(left) > level;
        let need_right = right < hi && g(right) > level;
        if !need_left && !need_right {
            break;
        }
        let span = right - left;
        let go_left = if need_left && need_right {
            rng.gen::<bool>()
        } else {
            need_left
        };
        if go_left {
            left = (left - span).max(lo);
        } else {
            right = (right + span).min(hi);
        }
    }

    for _ in 0..MAX_SHRINKS {
        let x1 = left + rng.gen::<f64>() * (right - left);
        if g(x1) > level {
            return Ok(x1);
        }
        if x1 < x0 {
            left = x1;
        } else {
            right = x1;
        }
    }
    Err(Error::Numerical(
        "slice sampler failed to find an acceptable point".into(),
    ))
}
