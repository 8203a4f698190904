//! Goodness-of-fit statistics and quadrature used to validate samplers.
//!
//! The MCMC routines in this crate are checked against distributional oracles
//! (Kolmogorov–Smirnov comparisons, χ² tests on binned draws, quadrature
//! moments of closed-form densities). Those checks are useful beyond the test
//! suite — e.g. for validating a sampler configuration against a reference
//! sample — so they live here rather than in test-only code.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Survival function of the Kolmogorov distribution,
/// `Q(x) = 2 Σ_{k≥1} (-1)^{k-1} exp(-2 k² x²)`.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.05 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * x * x).exp();
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_p_value(stat: f64, n_eff: f64) -> f64 {
    // Stephens' small-sample adjustment to the asymptotic distribution.
    let s = n_eff.sqrt();
    kolmogorov_sf((s + 0.12 + 0.11 / s) * stat)
}

/// Two-sample Kolmogorov–Smirnov test. Returns `(statistic, p_value)`.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert!(!xs.is_empty() && !ys.is_empty());
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(|u, v| u.partial_cmp(v).unwrap());
    b.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        let diff = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        d = d.max(diff);
    }
    let n_eff = (n as f64) * (m as f64) / ((n + m) as f64);
    (d, ks_p_value(d, n_eff))
}

/// One-sample Kolmogorov–Smirnov test against a reference CDF.
/// Returns `(statistic, p_value)`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> (f64, f64) {
    assert!(!xs.is_empty());
    let mut a = xs.to_vec();
    a.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let n = a.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in a.iter().enumerate() {
        let f = cdf(*x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    (d, ks_p_value(d, n))
}

/// χ² goodness-of-fit test of observed counts against expected counts.
/// Degrees of freedom are `len - 1`. Returns `(statistic, p_value)`.
///
/// Cells with expected count below 5 should be merged by the caller; this
/// function only requires them positive.
pub fn chi_square_gof(observed: &[f64], expected: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2);
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(o, e)| {
            assert!(*e > 0.0, "expected count must be positive");
            (o - e) * (o - e) / e
        })
        .sum();
    let dof = (observed.len() - 1) as f64;
    let dist = ChiSquared::new(dof).unwrap();
    (stat, 1.0 - dist.cdf(stat))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    simpson_rec(f, a, b, fa, fb, fm, simpson(a, b, fa, fm, fb), tol, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson_rec(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1)
        + simpson_rec(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1)
}

/// Empirical quantile by the order-statistic rule: the `ceil(q·n)`-th smallest
/// value (`q` in `(0, 1]`).
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    assert!(q > 0.0 && q <= 1.0);
    let k = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[k - 1]
}
