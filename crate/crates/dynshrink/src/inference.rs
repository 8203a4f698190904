//! Posterior summaries: highest-density intervals, joint credible bands,
//! simultaneous band scores, and point-estimate metrics.

use crate::error::{Error, Result};
use crate::stats::quantile;

/// Shortest interval containing at least `level` of the draws: among all
/// windows of `⌈level·N⌉` consecutive order statistics, the narrowest.
pub fn hpd_interval(draws: &[f64], level: f64) -> Result<(f64, f64)> {
    if draws.is_empty() {
        return Err(Error::invalid("no draws for an interval"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("level must lie in (0, 1), got {level}")));
    }
    let mut sorted: Vec<f64> = draws.to_vec();
    if sorted.iter().any(|v| v.is_nan()) {
        return Err(Error::invalid("draws contain NaN"));
    }
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let m = ((level * n as f64).ceil() as usize).clamp(1, n);
    let mut best = (sorted[0], sorted[m - 1]);
    for i in 1..=(n - m) {
        if sorted[i + m - 1] - sorted[i] < best.1 - best.0 {
            best = (sorted[i], sorted[i + m - 1]);
        }
    }
    Ok(best)
}

/// Equal-tailed quantile interval at the given level.
pub fn quantile_interval(draws: &[f64], level: f64) -> Result<(f64, f64)> {
    if draws.is_empty() {
        return Err(Error::invalid("no draws for an interval"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("level must lie in (0, 1), got {level}")));
    }
    let mut sorted: Vec<f64> = draws.to_vec();
    if sorted.iter().any(|v| v.is_nan()) {
        return Err(Error::invalid("draws contain NaN"));
    }
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let alpha = 1.0 - level;
    Ok((
        quantile(&sorted, alpha / 2.0),
        quantile(&sorted, 1.0 - alpha / 2.0),
    ))
}

/// Mean credible-interval width across time, from equal-tailed quantile
/// intervals of the path draws (`draws[i]` is one length-`T` path).
pub fn mciw(draws: &[Vec<f64>], level: f64) -> Result<f64> {
    let t_len = check_paths(draws)?;
    let mut total = 0.0;
    let mut column = vec![0.0f64; draws.len()];
    for t in 0..t_len {
        for (i, d) in draws.iter().enumerate() {
            column[i] = d[t];
        }
        let (lo, hi) = quantile_interval(&column, level)?;
        total += hi - lo;
    }
    Ok(total / t_len as f64)
}

/// Fraction of time points whose true value falls inside the pointwise HPD
/// interval.
pub fn hpd_coverage(draws: &[Vec<f64>], truth: &[f64], level: f64) -> Result<f64> {
    let t_len = check_paths(draws)?;
    if truth.len() != t_len {
        return Err(Error::invalid(format!(
            "truth length {} does not match path length {t_len}",
            truth.len()
        )));
    }
    let mut hits = 0usize;
    let mut column = vec![0.0f64; draws.len()];
    for t in 0..t_len {
        for (i, d) in draws.iter().enumerate() {
            column[i] = d[t];
        }
        let (lo, hi) = hpd_interval(&column, level)?;
        if truth[t] >= lo && truth[t] <= hi {
            hits += 1;
        }
    }
    Ok(hits as f64 / t_len as f64)
}

/// Root mean squared error between an estimate and the truth.
pub fn rmse(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    if estimate.len() != truth.len() || estimate.is_empty() {
        return Err(Error::invalid(format!(
            "rmse needs matching nonempty inputs, got {} and {}",
            estimate.len(),
            truth.len()
        )));
    }
    let ss: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok((ss / estimate.len() as f64).sqrt())
}

struct BandScaffold {
    means: Vec<f64>,
    sds: Vec<f64>,
    /// Per-draw sup-statistics `Mᵢ = max_t |βᵢ(t) − m_t|/s_t`, ascending.
    sorted_sup: Vec<f64>,
}

fn band_scaffold(draws: &[Vec<f64>]) -> Result<BandScaffold> {
    let t_len = check_paths(draws)?;
    let n = draws.len();
    if n < 2 {
        return Err(Error::invalid("need at least two draws for a band"));
    }
    let mut means = vec![0.0f64; t_len];
    for d in draws {
        for (m, v) in means.iter_mut().zip(d) {
            *m += v;
        }
    }
    for m in means.iter_mut() {
        *m /= n as f64;
    }
    let mut sds = vec![0.0f64; t_len];
    for d in draws {
        for t in 0..t_len {
            let c = d[t] - means[t];
            sds[t] += c * c;
        }
    }
    for s in sds.iter_mut() {
        *s = (*s / (n - 1) as f64).sqrt();
    }
    let mut sup: Vec<f64> = draws
        .iter()
        .map(|d| {
            let mut m = 0.0f64;
            for t in 0..t_len {
                if sds[t] > 0.0 {
                    m = m.max((d[t] - means[t]).abs() / sds[t]);
                }
            }
            m
        })
        .collect();
    sup.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(BandScaffold {
        means,
        sds,
        sorted_sup: sup,
    })
}

/// Simultaneous credible band `m_t ± q·s_t`, where `q` is the `level`
/// quantile of the per-draw sup-statistics. Time points with posterior
/// standard deviation exactly zero contribute a degenerate band and are
/// excluded from the sup.
pub fn simultaneous_bands(draws: &[Vec<f64>], level: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("level must lie in (0, 1), got {level}")));
    }
    let scaffold = band_scaffold(draws)?;
    let q = quantile(&scaffold.sorted_sup, level);
    let lo = scaffold
        .means
        .iter()
        .zip(&scaffold.sds)
        .map(|(m, s)| m - q * s)
        .collect();
    let hi = scaffold
        .means
        .iter()
        .zip(&scaffold.sds)
        .map(|(m, s)| m + q * s)
        .collect();
    Ok((lo, hi))
}

const SIMBAS_GRID: usize = 1000;

/// Simultaneous band scores: for each time point, the smallest grid value
/// `α_k = k/1000` at which the level-`(1 − α)` simultaneous band excludes
/// zero. A score of 0 means even the widest band excludes zero; a score of
/// 1 (reported as `1.0`) means no band on the grid does.
pub fn simbas(draws: &[Vec<f64>]) -> Result<Vec<f64>> {
    let scaffold = band_scaffold(draws)?;
    let qs: Vec<f64> = (0..SIMBAS_GRID)
        .map(|k| {
            let alpha = k as f64 / SIMBAS_GRID as f64;
            quantile(&scaffold.sorted_sup, 1.0 - alpha)
        })
        .collect();
    // Zero is excluded at α iff |m_t|/s_t > q(1 − α); q is nonincreasing in
    // α, so the exclusion set is an upper tail of the grid found by binary
    // search.
    let scores = scaffold
        .means
        .iter()
        .zip(&scaffold.sds)
        .map(|(&m, &s)| {
            let ratio = if s > 0.0 {
                m.abs() / s
            } else if m != 0.0 {
                f64::INFINITY
            } else {
                return 1.0;
            };
            let k = qs.partition_point(|&q| q >= ratio);
            if k == SIMBAS_GRID {
                1.0
            } else {
                k as f64 / SIMBAS_GRID as f64
            }
        })
        .collect();
    Ok(scores)
}

/// Global band score: the minimum of the simultaneous band scores over
/// time, a variable-level significance summary for a whole coefficient
/// path.
pub fn gbpv(draws: &[Vec<f64>]) -> Result<f64> {
    let scores = simbas(draws)?;
    Ok(scores.into_iter().fold(f64::INFINITY, f64::min))
}

/// Complete posterior path summary across coefficients: pointwise means and
/// HPD intervals, simultaneous bands, per-point simultaneous band scores,
/// and per-coefficient global band scores, all at one level.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SummaryBands {
    pub t_len: usize,
    pub p: usize,
    pub level: f64,
    /// Per-(time, coefficient) fields, stacked time-major: `(t, j) → t·p + j`.
    pub mean: Vec<f64>,
    pub hpd_lo: Vec<f64>,
    pub hpd_hi: Vec<f64>,
    pub band_lo: Vec<f64>,
    pub band_hi: Vec<f64>,
    pub simbas: Vec<f64>,
    /// Per-coefficient global band scores, length `p`.
    pub gbpv: Vec<f64>,
}

/// Build a [`SummaryBands`] where `coef_paths[j]` holds the `N × T` path
/// draws of coefficient `j`.
pub fn summary_bands(coef_paths: &[Vec<Vec<f64>>], level: f64) -> Result<SummaryBands> {
    if coef_paths.is_empty() {
        return Err(Error::invalid("no coefficients to summarize"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("level must lie in (0, 1), got {level}")));
    }
    let p = coef_paths.len();
    let t_len = check_paths(&coef_paths[0])?;
    let flat = t_len * p;
    let mut out = SummaryBands {
        t_len,
        p,
        level,
        mean: vec![0.0; flat],
        hpd_lo: vec![0.0; flat],
        hpd_hi: vec![0.0; flat],
        band_lo: vec![0.0; flat],
        band_hi: vec![0.0; flat],
        simbas: vec![0.0; flat],
        gbpv: Vec::with_capacity(p),
    };
    for (j, paths) in coef_paths.iter().enumerate() {
        if check_paths(paths)? != t_len {
            return Err(Error::invalid(
                "coefficients disagree on path length".to_string(),
            ));
        }
        let (blo, bhi) = simultaneous_bands(paths, level)?;
        let scores = simbas(paths)?;
        out.gbpv
            .push(scores.iter().copied().fold(f64::INFINITY, f64::min));
        let mut column = vec![0.0f64; paths.len()];
        for t in 0..t_len {
            for (i, d) in paths.iter().enumerate() {
                column[i] = d[t];
            }
            let (lo, hi) = hpd_interval(&column, level)?;
            let idx = t * p + j;
            out.mean[idx] = column.iter().sum::<f64>() / column.len() as f64;
            out.hpd_lo[idx] = lo;
            out.hpd_hi[idx] = hi;
            out.band_lo[idx] = blo[t];
            out.band_hi[idx] = bhi[t];
            out.simbas[idx] = scores[t];
        }
    }
    Ok(out)
}

fn check_paths(draws: &[Vec<f64>]) -> Result<usize> {
    let t_len = draws.first().map(|d| d.len()).unwrap_or(0);
    if t_len == 0 {
        return Err(Error::invalid("no path draws"));
    }
    for d in draws {
        if d.len() != t_len {
            return Err(Error::invalid(format!(
                "ragged path draws: {} vs {t_len}",
                d.len()
            )));
        }
        if d.iter().any(|v| v.is_nan()) {
            return Err(Error::invalid("path draws contain NaN"));
        }
    }
    Ok(t_len)
}
