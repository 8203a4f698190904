//! Data handling: benchmark simulations and CSV ingestion onto a regular
//! time grid.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use rand_distr::{Distribution, StandardNormal};
use std::io::{Read, Write as IoWrite};
use std::path::Path;

/// Ground truth attached to simulated data.
#[derive(Debug, Clone)]
pub struct TruthInfo {
    /// True coefficient paths, stacked time-major `(t, j) → t·p + j`.
    pub beta: Vec<f64>,
    /// True noise scale.
    pub sigma: f64,
}

/// A univariate series (optionally with regression predictors) on a regular
/// grid. Missing observations are `NaN` entries of `y`.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub y: Vec<f64>,
    /// Row-major `T × p` design matrix, when predictors are present.
    pub x: Option<Vec<f64>>,
    pub p: usize,
    /// Time stamp of the first grid point and the grid spacing.
    pub t0: f64,
    pub step: f64,
    pub truth: Option<TruthInfo>,
}

impl Dataset {
    pub fn t_len(&self) -> usize {
        self.y.len()
    }

    pub fn missing_mask(&self) -> Vec<bool> {
        self.y.iter().map(|v| v.is_nan()).collect()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.step * i as f64
    }
}

/// The four benchmark test functions on the grid `t_i = i/T`, `i = 1..T`.
pub fn donoho_function(name: &str, t: f64) -> Result<f64> {
    const BLOCK_T: [f64; 11] = [
        0.10, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81,
    ];
    const BLOCK_H: [f64; 11] = [
        4.0, -5.0, 3.0, -4.0, 5.0, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2,
    ];
    const BUMP_H: [f64; 11] = [4.0, 5.0, 3.0, 4.0, 5.0, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2];
    const BUMP_W: [f64; 11] = [
        0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005,
    ];
    let val = match name {
        "blocks" => BLOCK_T
            .iter()
            .zip(&BLOCK_H)
            .map(|(tj, h)| h * (1.0 + (t - tj).signum_zero()) / 2.0)
            .sum(),
        "bumps" => BLOCK_T
            .iter()
            .zip(BUMP_H.iter().zip(&BUMP_W))
            .map(|(tj, (h, w))| h * (1.0 + ((t - tj) / w).abs()).powi(-4))
            .sum(),
        "heavisine" => {
            4.0 * (4.0 * std::f64::consts::PI * t).sin()
                - (t - 0.3).signum_zero()
                - (0.72 - t).signum_zero()
        }
        "doppler" => {
            (t * (1.0 - t)).max(0.0).sqrt()
                * (2.0 * std::f64::consts::PI * 1.05 / (t + 0.05)).sin()
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown test function '{other}' (expected blocks, bumps, heavisine, or doppler)"
            )))
        }
    };
    Ok(val)
}

trait SignumZero {
    fn signum_zero(self) -> f64;
}

impl SignumZero for f64 {
    /// Sign with `sgn(0) = 0`, unlike `f64::signum`.
    fn signum_zero(self) -> f64 {
        if self == 0.0 {
            0.0
        } else {
            self.signum()
        }
    }
}

/// Simulate one of the benchmark curves observed with Gaussian noise whose
/// scale is set by the root signal-to-noise ratio: σ = sd(f)/rsnr.
pub fn simulate_donoho(name: &str, t_len: usize, rsnr: f64, seed: u64) -> Result<Dataset> {
    if t_len < 5 {
        return Err(Error::invalid(format!("need at least 5 points, got {t_len}")));
    }
    if !(rsnr > 0.0) || !rsnr.is_finite() {
        return Err(Error::invalid(format!("rsnr must be positive, got {rsnr}")));
    }
    let truth: Vec<f64> = (1..=t_len)
        .map(|i| donoho_function(name, i as f64 / t_len as f64))
        .collect::<Result<_>>()?;
    let sigma = sample_sd(&truth) / rsnr;
    let mut rng = RngStream::new(seed, 0);
    let y: Vec<f64> = truth
        .iter()
        .map(|f| {
            let e: f64 = StandardNormal.sample(&mut rng);
            f + sigma * e
        })
        .collect();
    Ok(Dataset {
        y,
        x: None,
        p: 1,
        t0: 1.0 / t_len as f64,
        step: 1.0 / t_len as f64,
        truth: Some(TruthInfo { beta: truth, sigma }),
    })
}

/// Simulate the time-varying-parameter benchmark: an intercept fixed at 2, a
/// piecewise-constant coefficient (2 on the second fifth of the sample, −2
/// on the fourth), a scaled random walk that vanishes after the midpoint,
/// and `p − 3` identically-zero coefficients. Predictors beyond the
/// intercept are standard normal, i.i.d. or stationary AR(1) with
/// coefficient 0.8.
pub fn simulate_tvp(
    t_len: usize,
    p: usize,
    rsnr: f64,
    ar_design: bool,
    seed: u64,
) -> Result<Dataset> {
    if t_len < 10 {
        return Err(Error::invalid(format!("need at least 10 points, got {t_len}")));
    }
    if p == 0 {
        return Err(Error::invalid("need at least one predictor"));
    }
    if !(rsnr > 0.0) || !rsnr.is_finite() {
        return Err(Error::invalid(format!("rsnr must be positive, got {rsnr}")));
    }
    let mut rng = RngStream::new(seed, 0);

    let mut x = vec![0.0f64; t_len * p];
    for t in 0..t_len {
        x[t * p] = 1.0;
    }
    for j in 1..p {
        let mut prev = 0.0f64;
        for t in 0..t_len {
            let e: f64 = StandardNormal.sample(&mut rng);
            let v = if ar_design && t > 0 {
                0.8 * prev + (1.0 - 0.64f64).sqrt() * e
            } else {
                e
            };
            x[t * p + j] = v;
            prev = v;
        }
    }

    let mut beta = vec![0.0f64; t_len * p];
    let lo2 = (t_len as f64 * 0.2).floor() as usize;
    let hi2 = (t_len as f64 * 0.4).floor() as usize;
    let lo2b = (t_len as f64 * 0.6).floor() as usize;
    let hi2b = (t_len as f64 * 0.8).floor() as usize;
    let half = (t_len as f64 * 0.5).floor() as usize;
    let mut walk = 0.0f64;
    for t in 0..t_len {
        beta[t * p] = 2.0;
        if p >= 2 {
            let i = t + 1;
            beta[t * p + 1] = if i > lo2 && i <= hi2 {
                2.0
            } else if i > lo2b && i <= hi2b {
                -2.0
            } else {
                0.0
            };
        }
        if p >= 3 {
            let i = t + 1;
            if i <= half {
                let e: f64 = StandardNormal.sample(&mut rng);
                walk += e / 10.0;
                beta[t * p + 2] = walk;
            } else {
                beta[t * p + 2] = 0.0;
            }
        }
    }

    let signal: Vec<f64> = (0..t_len)
        .map(|t| (0..p).map(|j| x[t * p + j] * beta[t * p + j]).sum())
        .collect();
    let sigma = sample_sd(&signal) / rsnr;
    let y: Vec<f64> = signal
        .iter()
        .map(|f| {
            let e: f64 = StandardNormal.sample(&mut rng);
            f + sigma * e
        })
        .collect();
    Ok(Dataset {
        y,
        x: Some(x),
        p,
        t0: 1.0,
        step: 1.0,
        truth: Some(TruthInfo { beta, sigma }),
    })
}

fn sample_sd(v: &[f64]) -> f64 {
    let n = v.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    (v.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1).max(1) as f64).sqrt()
}

/// Read a dataset from CSV with header `time,y[,<predictors>…]`. An empty
/// `y` field marks a missing observation. Time stamps must be strictly
/// increasing; they are snapped to a regular grid whose spacing is the
/// greatest common divisor of the observed gaps (relative tolerance 1e-9),
/// inserting missing rows for interior grid points that carry no
/// observation. Refuses grids that would grow past 50× the observed rows.
pub fn ingest_csv(path: &Path) -> Result<Dataset> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
    ingest_csv_reader(file)
}

pub fn ingest_csv_reader<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers().map_err(Error::from)?.clone();
    if headers.len() < 2 {
        return Err(Error::data("expected at least columns 'time' and 'y'"));
    }
    if headers.get(0).map(str::trim) != Some("time") || headers.get(1).map(str::trim) != Some("y")
    {
        return Err(Error::data(format!(
            "header must start with 'time,y', got '{}'",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let p_cols = headers.len() - 2;

    let mut times = Vec::new();
    let mut ys = Vec::new();
    let mut xs: Vec<Vec<f64>> = Vec::new();
    for (row_idx, record) in rdr.records().enumerate() {
        let line = row_idx + 2;
        let record = record.map_err(Error::from)?;
        if record.len() != headers.len() {
            return Err(Error::data(format!(
                "line {line}: expected {} fields, found {}",
                headers.len(),
                record.len()
            )));
        }
        let t: f64 = record[0]
            .trim()
            .parse()
            .map_err(|_| Error::data(format!("line {line}: invalid time '{}'", &record[0])))?;
        if !t.is_finite() {
            return Err(Error::data(format!("line {line}: non-finite time {t}")));
        }
        let y_field = record[1].trim();
        let y = if y_field.is_empty() {
            f64::NAN
        } else {
            let v: f64 = y_field
                .parse()
                .map_err(|_| Error::data(format!("line {line}: invalid y '{y_field}'")))?;
            if !v.is_finite() {
                return Err(Error::data(format!("line {line}: non-finite y {v}")));
            }
            v
        };
        let mut xrow = Vec::with_capacity(p_cols);
        for k in 0..p_cols {
            let field = record[k + 2].trim();
            let v: f64 = field.parse().map_err(|_| {
                Error::data(format!(
                    "line {line}: invalid value '{field}' in column '{}'",
                    headers.get(k + 2).unwrap_or("")
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::data(format!(
                    "line {line}: non-finite value in column '{}'",
                    headers.get(k + 2).unwrap_or("")
                )));
            }
            xrow.push(v);
        }
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(Error::data(format!(
                    "line {line}: time {t} does not increase past {prev}"
                )));
            }
        }
        times.push(t);
        ys.push(y);
        xs.push(xrow);
    }
    if times.len() < 2 {
        return Err(Error::data("need at least two data rows"));
    }

    let gaps: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let max_gap = gaps.iter().cloned().fold(0.0f64, f64::max);
    let tol = 1e-9 * max_gap;
    let mut g = gaps[0];
    for &d in &gaps[1..] {
        g = float_gcd(g, d, tol);
    }
    for &d in &gaps {
        let k = (d / g).round();
        if k < 1.0 || (d / g - k).abs() > 1e-6 {
            return Err(Error::data(format!(
                "time gap {d} is not a multiple of the inferred grid step {g}"
            )));
        }
    }
    let span = times[times.len() - 1] - times[0];
    let n_grid = (span / g).round() as usize + 1;
    if n_grid > 50 * times.len() {
        return Err(Error::data(format!(
            "irregular spacing: a common grid would need {n_grid} points for {} rows",
            times.len()
        )));
    }

    let mut y = vec![f64::NAN; n_grid];
    let mut x = if p_cols > 0 {
        Some(vec![f64::NAN; n_grid * p_cols])
    } else {
        None
    };
    for (i, &t) in times.iter().enumerate() {
        let idx = ((t - times[0]) / g).round() as usize;
        y[idx] = ys[i];
        if let Some(x) = x.as_mut() {
            x[idx * p_cols..(idx + 1) * p_cols].copy_from_slice(&xs[i]);
        }
    }
    if let Some(x) = &x {
        if x.iter().any(|v| v.is_nan()) {
            return Err(Error::data(
                "grid completion inserted rows, but predictor values cannot be inferred; \
                 supply a complete design or a regular grid",
            ));
        }
    }
    Ok(Dataset {
        y,
        x,
        p: p_cols.max(1),
        t0: times[0],
        step: g,
        truth: None,
    })
}

/// Greatest common divisor of two positive reals to within `tol`.
fn float_gcd(mut a: f64, mut b: f64, tol: f64) -> f64 {
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while b > tol {
        let r = (a - (a / b).round() * b).abs();
        a = b;
        b = r;
    }
    a
}

/// Write a dataset as `time,y[,x1..xp]`, with missing observations as empty
/// fields.
pub fn write_csv(data: &Dataset, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let p = if data.x.is_some() { data.p } else { 0 };
    let mut header = String::from("time,y");
    for j in 1..=p {
        header.push_str(&format!(",x{j}"));
    }
    writeln!(out, "{header}")?;
    for t in 0..data.t_len() {
        let mut row = format!("{}", data.time(t));
        if data.y[t].is_nan() {
            row.push(',');
        } else {
            row.push_str(&format!(",{}", data.y[t]));
        }
        if let Some(x) = &data.x {
            for j in 0..p {
                row.push_str(&format!(",{}", x[t * p + j]));
            }
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{mean, variance};

    #[test]
    fn blocks_values_match_hand_computation() {
        // At t = 0.5 every jump location at or below 0.4999… has fired:
        // 4 − 5 + 3 − 4 + 5 − 4.2 + 2.1 = 0.9.
        assert!((donoho_function("blocks", 0.5).unwrap() - 0.9).abs() < 1e-12);
        assert_eq!(donoho_function("blocks", 0.05).unwrap(), 0.0);
        // All eleven jumps: total 4−5+3−4+5−4.2+2.1+4.3−3.1+2.1−4.2 = 0.
        assert!(donoho_function("blocks", 0.99).unwrap().abs() < 1e-12);
        // Exactly at a jump point the sign function contributes half.
        let just_before = donoho_function("blocks", 0.0999999).unwrap();
        let at = donoho_function("blocks", 0.10).unwrap();
        let just_after = donoho_function("blocks", 0.1000001).unwrap();
        assert!((at - (just_before + just_after) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn heavisine_values_match_hand_computation() {
        // t = 0.5: the sine vanishes, both sign terms are −1 and −1.
        assert!((donoho_function("heavisine", 0.5).unwrap() - (-2.0)).abs() < 1e-12);
        // t = 0.25: sin(π) = 0, −sgn(−0.05) − sgn(0.47) = 1 − 1 = 0.
        assert!(donoho_function("heavisine", 0.25).unwrap().abs() < 1e-12);
        // t = 0.125: 4·sin(π/2) = 4, +1 − 1 = 0.
        assert!((donoho_function("heavisine", 0.125).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bumps_and_doppler_have_expected_shape() {
        // Bumps is nonnegative with sharp peaks at the knots.
        let peak = donoho_function("bumps", 0.25).unwrap();
        let off = donoho_function("bumps", 0.35).unwrap();
        assert!(peak > 4.0, "{peak}");
        assert!(off < 1.0, "{off}");
        for i in 1..200 {
            assert!(donoho_function("bumps", i as f64 / 200.0).unwrap() >= 0.0);
        }
        // Doppler vanishes at both endpoints and oscillates faster near 0.
        assert!(donoho_function("doppler", 1.0).unwrap().abs() < 1e-12);
        assert!(donoho_function("doppler", 1e-12).unwrap().abs() < 1e-5);
        assert!(donoho_function("nope", 0.5).is_err());
    }

    #[test]
    fn donoho_noise_scale_honors_the_signal_to_noise_ratio() {
        let t_len = 2000;
        let rsnr = 5.0;
        let data = simulate_donoho("heavisine", t_len, rsnr, 42).unwrap();
        let truth = data.truth.as_ref().unwrap();
        assert!((sample_sd(&truth.beta) / truth.sigma - rsnr).abs() < 1e-12);
        let noise: Vec<f64> = data
            .y
            .iter()
            .zip(&truth.beta)
            .map(|(y, f)| y - f)
            .collect();
        assert!((mean(&noise)).abs() < 0.1 * truth.sigma);
        assert!((variance(&noise).sqrt() - truth.sigma).abs() < 0.05 * truth.sigma);
        assert!(data.missing_mask().iter().all(|m| !m));
    }

    #[test]
    fn simulations_are_deterministic_in_the_seed() {
        let a = simulate_donoho("doppler", 100, 3.0, 9).unwrap();
        let b = simulate_donoho("doppler", 100, 3.0, 9).unwrap();
        let c = simulate_donoho("doppler", 100, 3.0, 10).unwrap();
        assert_eq!(a.y, b.y);
        assert_ne!(a.y, c.y);
        let ta = simulate_tvp(60, 4, 3.0, true, 9).unwrap();
        let tb = simulate_tvp(60, 4, 3.0, true, 9).unwrap();
        assert_eq!(ta.y, tb.y);
        assert_eq!(ta.x, tb.x);
    }

    #[test]
    fn tvp_truth_matches_the_design() {
        let t_len = 200;
        let p = 20;
        let data = simulate_tvp(t_len, p, 3.0, false, 7).unwrap();
        let truth = data.truth.as_ref().unwrap();
        let x = data.x.as_ref().unwrap();
        for t in 0..t_len {
            assert_eq!(x[t * p], 1.0);
            assert_eq!(truth.beta[t * p], 2.0);
        }
        // Second coefficient: 2 on (40, 80], −2 on (120, 160], else 0.
        assert_eq!(truth.beta[39 * p + 1], 0.0); // i = 40
        assert_eq!(truth.beta[40 * p + 1], 2.0); // i = 41
        assert_eq!(truth.beta[79 * p + 1], 2.0); // i = 80
        assert_eq!(truth.beta[80 * p + 1], 0.0); // i = 81
        assert_eq!(truth.beta[120 * p + 1], -2.0); // i = 121
        assert_eq!(truth.beta[159 * p + 1], -2.0); // i = 160
        assert_eq!(truth.beta[160 * p + 1], 0.0); // i = 161
        // Third: random walk through the midpoint, then identically zero.
        assert!(truth.beta[99 * p + 2] != 0.0);
        for t in 100..t_len {
            assert_eq!(truth.beta[t * p + 2], 0.0);
        }
        // Predictors 4..p carry identically-zero coefficients.
        let mut zero_cols = 0;
        for j in 3..p {
            if (0..t_len).all(|t| truth.beta[t * p + j] == 0.0) {
                zero_cols += 1;
            }
        }
        assert_eq!(zero_cols, 17);
        // The walk is a cumulative sum of N(0, 1/100) steps.
        let walk: Vec<f64> = (0..100).map(|t| truth.beta[t * p + 2]).collect();
        let steps: Vec<f64> = (1..100).map(|t| walk[t] - walk[t - 1]).collect();
        assert!(variance(&steps) < 0.05);
        assert!(variance(&steps) > 0.002);
    }

    #[test]
    fn ar_design_has_the_right_autocorrelation() {
        let t_len = 4000;
        let p = 3;
        let data = simulate_tvp(t_len, p, 3.0, true, 13).unwrap();
        let x = data.x.as_ref().unwrap();
        let col: Vec<f64> = (0..t_len).map(|t| x[t * p + 1]).collect();
        let m = mean(&col);
        let mut num = 0.0;
        let mut den = 0.0;
        for t in 1..t_len {
            num += (col[t] - m) * (col[t - 1] - m);
        }
        for v in &col {
            den += (v - m) * (v - m);
        }
        let rho = num / den;
        assert!((rho - 0.8).abs() < 0.05, "lag-1 autocorrelation {rho}");
        assert!((variance(&col) - 1.0).abs() < 0.15);

        let iid = simulate_tvp(t_len, p, 3.0, false, 13).unwrap();
        let xi = iid.x.as_ref().unwrap();
        let col: Vec<f64> = (0..t_len).map(|t| xi[t * p + 1]).collect();
        let m = mean(&col);
        let mut num = 0.0;
        for t in 1..t_len {
            num += (col[t] - m) * (col[t - 1] - m);
        }
        assert!((num / den).abs() < 0.06);
    }

    #[test]
    fn csv_round_trip_preserves_everything() {
        let mut data = simulate_tvp(30, 3, 4.0, false, 21).unwrap();
        data.y[7] = f64::NAN;
        data.truth = None;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        write_csv(&data, &path).unwrap();
        let back = ingest_csv(&path).unwrap();
        assert_eq!(back.t_len(), 30);
        assert_eq!(back.p, 3);
        for t in 0..30 {
            if t == 7 {
                assert!(back.y[t].is_nan());
            } else {
                assert!((back.y[t] - data.y[t]).abs() < 1e-9);
            }
        }
        let xa = data.x.as_ref().unwrap();
        let xb = back.x.as_ref().unwrap();
        for (a, b) in xa.iter().zip(xb) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!((back.t0 - 1.0).abs() < 1e-9);
        assert!((back.step - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gap_grid_inserts_missing_rows() {
        let csv = "time,y\n0,1.0\n10,2.0\n20,3.0\n50,4.0\n";
        let data = ingest_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(data.t_len(), 6);
        assert!((data.step - 10.0).abs() < 1e-9);
        assert_eq!(data.missing_mask(), vec![false, false, false, true, true, false]);
        assert_eq!(data.y[2], 3.0);
        assert_eq!(data.y[5], 4.0);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let non_monotone = "time,y\n0,1.0\n2,2.0\n1,3.0\n";
        let err = ingest_csv_reader(non_monotone.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");

        let duplicate = "time,y\n0,1.0\n1,2.0\n1,3.0\n";
        let err = ingest_csv_reader(duplicate.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");

        let bad_y = "time,y\n0,1.0\n1,oops\n";
        let err = ingest_csv_reader(bad_y.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");

        let bad_header = "when,y\n0,1.0\n";
        assert!(ingest_csv_reader(bad_header.as_bytes()).is_err());
    }

    #[test]
    fn empty_y_means_missing_and_blank_design_is_rejected() {
        let csv = "time,y\n0,\n1,2.0\n2,3.0\n";
        let data = ingest_csv_reader(csv.as_bytes()).unwrap();
        assert!(data.y[0].is_nan());
        assert_eq!(data.y[1], 2.0);

        // Grid completion cannot invent predictor rows.
        let csv = "time,y,x1\n0,1.0,0.5\n1,2.0,0.25\n3,3.0,0.75\n";
        let err = ingest_csv_reader(csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("predictor"), "{err}");
    }

    #[test]
    fn hopelessly_irregular_spacing_is_refused() {
        let mut csv = String::from("time,y\n");
        csv.push_str("0,1.0\n0.0001,2.0\n1000,3.0\n");
        let err = ingest_csv_reader(csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("irregular"), "{err}");
    }

    #[test]
    fn fractional_regular_grids_are_accepted() {
        let csv = "time,y\n0.25,1\n0.5,2\n0.75,3\n1.25,4\n";
        let data = ingest_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(data.t_len(), 5);
        assert!((data.step - 0.25).abs() < 1e-12);
        assert!(data.y[3].is_nan());
    }
}
