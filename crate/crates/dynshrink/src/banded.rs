//! Banded symmetric positive-definite linear algebra.
//!
//! Gaussian full-conditionals in trend filtering and time-varying-parameter
//! regression have precision matrices `Q = Σ_obs⁻¹ + D' Σ_innov⁻¹ D` whose
//! bandwidth is fixed by the order of the difference operator `D`, not the
//! series length. Everything here — Cholesky factorization, triangular
//! solves, and joint sampling `N(Q⁻¹ℓ, Q⁻¹)` — therefore runs in O(T·bw²)
//! time and O(T·bw) memory.
//!
//! Symmetric band storage: `bands[k][i]` holds the entry `Q[i+k][i]` of the
//! `k`-th subdiagonal; `bands[0]` is the main diagonal.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Symmetric banded matrix (intended to hold a positive-definite precision).
#[derive(Debug, Clone, PartialEq)]
pub struct BandedPrecision {
    dim: usize,
    bands: Vec<Vec<f64>>,
}

impl BandedPrecision {
    /// Zero matrix of the given dimension and bandwidth (bandwidth is capped
    /// at `dim - 1`).
    pub fn zeros(dim: usize, bandwidth: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let bw = bandwidth.min(dim - 1);
        let bands = (0..=bw).map(|k| vec![0.0f64; dim - k]).collect();
        Self { dim, bands }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    /// The `k`-th subdiagonal (`k = 0` is the main diagonal).
    pub fn band(&self, k: usize) -> &[f64] {
        &self.bands[k]
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        if k > self.bandwidth() {
            0.0
        } else {
            self.bands[k][lo]
        }
    }

    /// Add `v` to entry `(i, j)` and, by symmetry, `(j, i)`.
    ///
    /// Panics if the entry lies outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.dim && j < self.dim, "index out of range");
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        assert!(
            k <= self.bandwidth(),
            "entry ({i}, {j}) outside bandwidth {}",
            self.bandwidth()
        );
        self.bands[k][lo] += v;
    }

    /// Add a diagonal matrix.
    pub fn add_diag(&mut self, diag: &[f64]) {
        assert_eq!(diag.len(), self.dim, "diagonal length mismatch");
        for (d, v) in self.bands[0].iter_mut().zip(diag) {
            *d += v;
        }
    }

    /// Add `jitter` to every diagonal entry.
    pub fn add_jitter(&mut self, jitter: f64) {
        for d in self.bands[0].iter_mut() {
            *d += jitter;
        }
    }

    /// Largest diagonal entry.
    pub fn max_diag(&self) -> f64 {
        self.bands[0].iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Rank-one update `Q += w · r r'` for a row `r` whose nonzero
    /// coefficients are `coeffs` starting at column `start`.
    ///
    /// Panics if the row extends past the matrix or the band.
    pub fn add_weighted_square_row(&mut self, start: usize, coeffs: &[f64], weight: f64) {
        assert!(
            start + coeffs.len() <= self.dim,
            "row extends past dimension"
        );
        assert!(
            coeffs.len() <= self.bandwidth() + 1,
            "row span {} exceeds bandwidth {}",
            coeffs.len(),
            self.bandwidth()
        );
        for (a, &ca) in coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in coeffs.iter().enumerate().skip(a) {
                if cb == 0.0 {
                    continue;
                }
                self.bands[b - a][start + a] += weight * ca * cb;
            }
        }
    }

    /// Dense copy (tests and small-problem diagnostics).
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0f64; self.dim]; self.dim];
        for (k, band) in self.bands.iter().enumerate() {
            for (i, &v) in band.iter().enumerate() {
                out[i + k][i] = v;
                out[i][i + k] = v;
            }
        }
        out
    }
}

/// Lower Cholesky factor of a banded positive-definite matrix, in the same
/// band storage as [`BandedPrecision`].
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    dim: usize,
    bands: Vec<Vec<f64>>,
}

/// Banded Cholesky factorization `Q = L L'`.
///
/// Fails with [`Error::NotPositiveDefinite`] carrying the pivot index at
/// which the factorization broke down.
pub fn cholesky_banded(q: &BandedPrecision) -> Result<BandedCholesky> {
    let n = q.dim;
    let bw = q.bandwidth();
    let mut l: Vec<Vec<f64>> = (0..=bw).map(|k| vec![0.0f64; n - k]).collect();
    for j in 0..n {
        let mut s = q.bands[0][j];
        for m in j.saturating_sub(bw)..j {
            let v = l[j - m][m];
            s -= v * v;
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::NotPositiveDefinite {
                index: j,
                context: None,
            });
        }
        let dj = s.sqrt();
        l[0][j] = dj;
        for i in (j + 1)..=(j + bw).min(n - 1) {
            let mut s = q.bands[i - j][j];
            for m in i.saturating_sub(bw)..j {
                s -= l[i - m][m] * l[j - m][m];
            }
            l[i - j][j] = s / dj;
        }
    }
    Ok(BandedCholesky { dim: n, bands: l })
}

impl BandedCholesky {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    /// Solve `L y = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim, "dimension mismatch");
        let bw = self.bandwidth();
        let mut y = vec![0.0f64; self.dim];
        for i in 0..self.dim {
            let mut s = b[i];
            for m in i.saturating_sub(bw)..i {
                s -= self.bands[i - m][m] * y[m];
            }
            y[i] = s / self.bands[0][i];
        }
        y
    }

    /// Solve `L' x = b`.
    pub fn solve_upper(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim, "dimension mismatch");
        let bw = self.bandwidth();
        let mut x = vec![0.0f64; self.dim];
        for i in (0..self.dim).rev() {
            let mut s = b[i];
            for k in (i + 1)..=(i + bw).min(self.dim - 1) {
                s -= self.bands[k - i][i] * x[k];
            }
            x[i] = s / self.bands[0][i];
        }
        x
    }

    /// Solve `Q x = b` through both triangular solves.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// `log det Q = 2 Σ log L_ii`.
    pub fn log_det(&self) -> f64 {
        2.0 * self.bands[0].iter().map(|d| d.ln()).sum::<f64>()
    }
}

/// One draw from `N(Q⁻¹ℓ, Q⁻¹)` by Cholesky factor algorithm: solve
/// `L a = ℓ`, then `L' x = a + e` with `e ~ N(0, I)`.
pub fn sample_banded_gaussian<R: Rng + ?Sized>(
    q: &BandedPrecision,
    linear: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    if linear.len() != q.dim {
        return Err(Error::invalid(format!(
            "linear term length {} does not match dimension {}",
            linear.len(),
            q.dim
        )));
    }
    let chol = cholesky_banded(q)?;
    let mut a = chol.solve_lower(linear);
    for v in a.iter_mut() {
        let e: f64 = StandardNormal.sample(rng);
        *v += e;
    }
    Ok(chol.solve_upper(&a))
}

/// The noise-free limit of [`sample_banded_gaussian`] (`e = 0`): the exact
/// posterior mean `Q⁻¹ℓ`. Exposed as a deterministic hook so the sampling
/// path can be validated against dense solves.
pub fn posterior_mean(q: &BandedPrecision, linear: &[f64]) -> Result<Vec<f64>> {
    if linear.len() != q.dim {
        return Err(Error::invalid(format!(
            "linear term length {} does not match dimension {}",
            linear.len(),
            q.dim
        )));
    }
    Ok(cholesky_banded(q)?.solve(linear))
}

/// Rows of the difference operator `D` of the given order, as
/// `(start_column, coefficients)` pairs. The first `order` rows are identity
/// rows that carry the diffuse-initialization pseudo-innovations; `phi`
/// replaces the first difference by the AR(1) quasi-difference
/// `x_t − φ x_{t−1}` (only valid for order 1).
pub fn difference_rows(t_len: usize, order: usize, phi: Option<f64>) -> Result<Vec<(usize, Vec<f64>)>> {
    if order == 0 || order > 2 {
        return Err(Error::invalid(format!(
            "difference order must be 1 or 2, got {order}"
        )));
    }
    if phi.is_some() && order != 1 {
        return Err(Error::invalid(
            "autoregressive coefficient only applies to order-1 differences",
        ));
    }
    if t_len <= order {
        return Err(Error::invalid(format!(
            "series length {t_len} too short for difference order {order}"
        )));
    }
    let p = phi.unwrap_or(1.0);
    let mut rows = Vec::with_capacity(t_len);
    for t in 0..order {
        rows.push((t, vec![1.0]));
    }
    for t in order..t_len {
        match order {
            1 => rows.push((t - 1, vec![-p, 1.0])),
            _ => rows.push((t - 2, vec![1.0, -2.0, 1.0])),
        }
    }
    Ok(rows)
}

/// Apply the difference operator: `ω = D x`, including the initialization
/// rows (`ω_t = x_t` for `t < order`).
pub fn apply_difference(x: &[f64], order: usize, phi: Option<f64>) -> Result<Vec<f64>> {
    let rows = difference_rows(x.len(), order, phi)?;
    Ok(rows
        .iter()
        .map(|(start, coeffs)| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * x[start + k])
                .sum()
        })
        .collect())
}

/// Assemble the banded precision `Q = diag(obs_prec) + D' diag(innov_prec) D`
/// for the difference operator of the given order (optionally the AR(1)
/// quasi-difference for order 1). `innov_prec[t]` weights row `t` of `D`,
/// including the initialization rows.
pub fn build_difference_precision(
    order: usize,
    obs_prec: &[f64],
    innov_prec: &[f64],
    phi: Option<f64>,
) -> Result<BandedPrecision> {
    let t_len = obs_prec.len();
    if innov_prec.len() != t_len {
        return Err(Error::invalid(format!(
            "precision vectors disagree in length: {} vs {}",
            t_len,
            innov_prec.len()
        )));
    }
    if let Some(w) = innov_prec.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::invalid(format!(
            "innovation precisions must be positive and finite, got {w}"
        )));
    }
    let rows = difference_rows(t_len, order, phi)?;
    let mut q = BandedPrecision::zeros(t_len, order);
    q.add_diag(obs_prec);
    for (t, (start, coeffs)) in rows.iter().enumerate() {
        q.add_weighted_square_row(*start, coeffs, innov_prec[t]);
    }
    Ok(q)
}
