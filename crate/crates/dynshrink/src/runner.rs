//! End-to-end run orchestration: simulate datasets to disk, fit models and
//! persist draws, evaluate fits against ground truth, and benchmark sweep
//! cost across series lengths.

use crate::data::{ingest_csv, simulate_donoho, simulate_tvp, write_csv, Dataset};
use crate::error::{Error, Result};
use crate::inference::{
    gbpv, hpd_coverage, mciw, quantile_interval, rmse, summary_bands, SummaryBands,
};
use crate::models::{
    fit_btf, fit_tvp, BtfModelSpec, McmcConfig, ModelDraws, ObsError, PriorFamily,
    TvpModelSpec,
};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write as IoWrite};
use std::path::Path;
use std::time::Instant;

/// What to simulate.
#[derive(Debug, Clone)]
pub enum SimKind {
    Donoho {
        function: String,
        t_len: usize,
        rsnr: f64,
    },
    Tvp {
        t_len: usize,
        p: usize,
        rsnr: f64,
        ar_design: bool,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimMeta {
    pub kind: String,
    pub t_len: usize,
    pub p: usize,
    pub rsnr: f64,
    pub seed: u64,
    pub sigma: f64,
}

/// Simulate a dataset and write `data.csv`, `truth.csv`, and
/// `sim_meta.json` under `out_dir`.
pub fn run_simulate(kind: &SimKind, seed: u64, out_dir: &Path) -> Result<SimMeta> {
    std::fs::create_dir_all(out_dir)?;
    let (data, kind_name) = match kind {
        SimKind::Donoho {
            function,
            t_len,
            rsnr,
        } => (
            simulate_donoho(function, *t_len, *rsnr, seed)?,
            function.clone(),
        ),
        SimKind::Tvp {
            t_len,
            p,
            rsnr,
            ar_design,
        } => (
            simulate_tvp(*t_len, *p, *rsnr, *ar_design, seed)?,
            if *ar_design { "tvp-ar" } else { "tvp-iid" }.to_string(),
        ),
    };
    write_csv(&data, &out_dir.join("data.csv"))?;
    let truth = data.truth.as_ref().expect("simulated data carries truth");
    write_truth_csv(&data, &out_dir.join("truth.csv"))?;
    let meta = SimMeta {
        kind: kind_name,
        t_len: data.t_len(),
        p: data.p,
        rsnr: match kind {
            SimKind::Donoho { rsnr, .. } | SimKind::Tvp { rsnr, .. } => *rsnr,
        },
        seed,
        sigma: truth.sigma,
    };
    write_json(&meta, &out_dir.join("sim_meta.json"))?;
    Ok(meta)
}

fn write_truth_csv(data: &Dataset, path: &Path) -> Result<()> {
    let truth = data
        .truth
        .as_ref()
        .ok_or_else(|| Error::invalid("dataset has no ground truth"))?;
    let p = data.p;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let mut header = String::from("time");
    for j in 1..=p {
        header.push_str(&format!(",beta{j}"));
    }
    writeln!(out, "{header}")?;
    for t in 0..data.t_len() {
        let mut row = format!("{}", data.time(t));
        for j in 0..p {
            row.push_str(&format!(",{}", truth.beta[t * p + j]));
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

/// Read a `truth.csv` written by [`run_simulate`]: stacked time-major
/// coefficient paths.
pub fn read_truth_csv(path: &Path) -> Result<(Vec<f64>, usize)> {
    let file = std::fs::File::open(path)?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let p = rdr.headers().map_err(Error::from)?.len().saturating_sub(1);
    if p == 0 {
        return Err(Error::data("truth file has no coefficient columns"));
    }
    let mut beta = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(Error::from)?;
        for j in 0..p {
            let v: f64 = record
                .get(j + 1)
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| Error::data(format!("truth line {}: bad value", i + 2)))?;
            beta.push(v);
        }
    }
    Ok((beta, p))
}

/// Which model a fit runs.
#[derive(Debug, Clone, Copy)]
pub enum ModelKind {
    Btf(BtfModelSpec),
    Tvp(TvpModelSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitManifest {
    pub model: String,
    pub prior: PriorFamily,
    pub obs_error: ObsError,
    pub d: usize,
    pub t_len: usize,
    pub p: usize,
    pub t0: f64,
    pub step: f64,
    pub n_iter: usize,
    pub burn: usize,
    pub thin: usize,
    pub chains: usize,
    pub seed: u64,
    pub draws_per_chain: usize,
    pub missing_idx: Vec<usize>,
    pub offsets: Vec<f64>,
    pub runtime_seconds: f64,
    pub files: Vec<String>,
}

pub struct FitResult {
    pub draws: ModelDraws,
    pub manifest: FitManifest,
}

/// Fit a model and persist everything needed to resume analysis: per-chain
/// draw CSVs for each parameter block, a JSON manifest, a plot-ready
/// posterior summary, and a scalar summary.
pub fn run_fit(
    data: &Dataset,
    model: &ModelKind,
    config: &McmcConfig,
    out_dir: &Path,
) -> Result<FitResult> {
    std::fs::create_dir_all(out_dir)?;
    let missing = data.missing_mask();
    let start = Instant::now();
    let draws = match model {
        ModelKind::Btf(spec) => {
            if data.x.is_some() && data.p > 1 {
                return Err(Error::invalid(
                    "dataset has predictors; fit the regression model instead",
                ));
            }
            fit_btf(&data.y, &missing, spec, config)?
        }
        ModelKind::Tvp(spec) => {
            let x = data
                .x
                .as_ref()
                .ok_or_else(|| Error::invalid("regression fit needs a design matrix"))?;
            fit_tvp(&data.y, &missing, x, data.p, spec, config)?
        }
    };
    let runtime = start.elapsed().as_secs_f64();

    let per_chain = draws.n_draws() / config.chains;
    let mut files = Vec::new();
    for chain in 0..config.chains {
        let range = chain * per_chain..(chain + 1) * per_chain;
        files.push(write_block_csv(
            out_dir,
            &format!("draws_beta_chain{chain}.csv"),
            &draws.beta[range.clone()],
            &beta_header(draws.t_len, draws.p),
        )?);
        files.push(write_block_csv(
            out_dir,
            &format!("draws_h_chain{chain}.csv"),
            &draws.h[range.clone()],
            &h_header(draws.t_len, draws.p),
        )?);
        files.push(write_block_csv(
            out_dir,
            &format!("draws_phi_chain{chain}.csv"),
            &draws.phi[range.clone()],
            &indexed_header("phi", draws.p),
        )?);
        files.push(write_block_csv(
            out_dir,
            &format!("draws_mu_chain{chain}.csv"),
            &draws.mu[range.clone()],
            &mu_header(draws.p),
        )?);
        files.push(write_block_csv(
            out_dir,
            &format!("draws_sigma_chain{chain}.csv"),
            &draws.sigma[range.clone()],
            &sigma_header(draws.sigma[0].len()),
        )?);
        if !draws.missing_idx.is_empty() {
            files.push(write_block_csv(
                out_dir,
                &format!("draws_imputed_chain{chain}.csv"),
                &draws.imputed[range.clone()],
                &draws
                    .missing_idx
                    .iter()
                    .map(|t| format!("y_t{}", t + 1))
                    .collect::<Vec<_>>(),
            )?);
        }
    }

    let (model_name, d) = match model {
        ModelKind::Btf(spec) => ("btf", spec.d),
        ModelKind::Tvp(spec) => ("tvp", spec.d),
    };
    let manifest = FitManifest {
        model: model_name.to_string(),
        prior: draws.meta.prior,
        obs_error: draws.meta.obs_error,
        d,
        t_len: draws.t_len,
        p: draws.p,
        t0: data.t0,
        step: data.step,
        n_iter: config.n_iter,
        burn: config.burn,
        thin: config.thin,
        chains: config.chains,
        seed: config.seed,
        draws_per_chain: per_chain,
        missing_idx: draws.missing_idx.clone(),
        offsets: draws.meta.offsets.clone(),
        runtime_seconds: runtime,
        files,
    };
    write_json(&manifest, &out_dir.join("manifest.json"))?;
    let coef_paths: Vec<Vec<Vec<f64>>> =
        (0..draws.p).map(|j| draws.beta_paths(j)).collect();
    let bands = summary_bands(&coef_paths, 0.95)?;
    write_plotdata(&bands, data, &out_dir.join("plotdata.csv"))?;
    let metrics = match &data.truth {
        Some(truth) => Some(evaluate_draws(&draws, &truth.beta, 0.95)?),
        None => None,
    };
    write_fit_summary(&draws, &bands, metrics, runtime, &out_dir.join("summary.json"))?;
    Ok(FitResult { draws, manifest })
}

fn beta_header(t_len: usize, p: usize) -> Vec<String> {
    if p == 1 {
        (1..=t_len).map(|t| format!("beta_t{t}")).collect()
    } else {
        (0..t_len * p)
            .map(|i| format!("beta_t{}_j{}", i / p + 1, i % p + 1))
            .collect()
    }
}

fn h_header(t_len: usize, p: usize) -> Vec<String> {
    if p == 1 {
        (1..=t_len).map(|t| format!("h_t{t}")).collect()
    } else {
        (0..t_len * p)
            .map(|i| format!("h_t{}_j{}", i / p + 1, i % p + 1))
            .collect()
    }
}

fn indexed_header(stem: &str, p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("{stem}_j{j}")).collect()
}

fn mu_header(p: usize) -> Vec<String> {
    let mut h = indexed_header("mu", p);
    if p > 1 {
        h.push("mu0".to_string());
    }
    h
}

fn sigma_header(len: usize) -> Vec<String> {
    if len == 1 {
        vec!["sigma".to_string()]
    } else {
        (1..=len).map(|t| format!("sigma_t{t}")).collect()
    }
}

fn write_block_csv(
    dir: &Path,
    name: &str,
    rows: &[Vec<f64>],
    header: &[String],
) -> Result<String> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(dir.join(name))?);
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut line = String::with_capacity(row.len() * 20);
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&format!("{v}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(name.to_string())
}

fn read_block_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if i == 0 {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        rows.push(row.map_err(|_| {
            Error::data(format!("{}: bad draw row at line {}", path.display(), i + 1))
        })?);
    }
    Ok(rows)
}

/// Reload a persisted fit: manifest plus all draw blocks, chains
/// concatenated in order.
pub fn load_fit(fit_dir: &Path) -> Result<FitResult> {
    let manifest: FitManifest = read_json(&fit_dir.join("manifest.json"))?;
    let mut beta = Vec::new();
    let mut h = Vec::new();
    let mut phi = Vec::new();
    let mut mu = Vec::new();
    let mut sigma = Vec::new();
    let mut imputed = Vec::new();
    for chain in 0..manifest.chains {
        beta.extend(read_block_csv(
            &fit_dir.join(format!("draws_beta_chain{chain}.csv")),
        )?);
        h.extend(read_block_csv(
            &fit_dir.join(format!("draws_h_chain{chain}.csv")),
        )?);
        phi.extend(read_block_csv(
            &fit_dir.join(format!("draws_phi_chain{chain}.csv")),
        )?);
        mu.extend(read_block_csv(
            &fit_dir.join(format!("draws_mu_chain{chain}.csv")),
        )?);
        sigma.extend(read_block_csv(
            &fit_dir.join(format!("draws_sigma_chain{chain}.csv")),
        )?);
        let imp_path = fit_dir.join(format!("draws_imputed_chain{chain}.csv"));
        if imp_path.exists() {
            imputed.extend(read_block_csv(&imp_path)?);
        }
    }
    if imputed.is_empty() {
        imputed = vec![Vec::new(); beta.len()];
    }
    let draws = ModelDraws {
        t_len: manifest.t_len,
        p: manifest.p,
        beta,
        h,
        phi,
        mu,
        sigma,
        imputed,
        missing_idx: manifest.missing_idx.clone(),
        meta: crate::models::DrawMeta {
            n_iter: manifest.n_iter,
            burn: manifest.burn,
            thin: manifest.thin,
            chains: manifest.chains,
            seed: manifest.seed,
            prior: manifest.prior,
            obs_error: manifest.obs_error,
            d: manifest.d,
            offsets: manifest.offsets.clone(),
        },
    };
    Ok(FitResult { draws, manifest })
}

/// Long-format posterior path summary: one row per coefficient and time
/// point with the posterior mean, pointwise HPD interval, simultaneous
/// band, and simultaneous band score. The coefficient column appears only
/// for regression fits.
fn write_plotdata(bands: &SummaryBands, data: &Dataset, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    if bands.p == 1 {
        writeln!(out, "time,mean,hpd_lo,hpd_hi,band_lo,band_hi,simbas")?;
    } else {
        writeln!(
            out,
            "coefficient,time,mean,hpd_lo,hpd_hi,band_lo,band_hi,simbas"
        )?;
    }
    for j in 0..bands.p {
        for t in 0..bands.t_len {
            let i = t * bands.p + j;
            if bands.p == 1 {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    data.time(t),
                    bands.mean[i],
                    bands.hpd_lo[i],
                    bands.hpd_hi[i],
                    bands.band_lo[i],
                    bands.band_hi[i],
                    bands.simbas[i]
                )?;
            } else {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    j + 1,
                    data.time(t),
                    bands.mean[i],
                    bands.hpd_lo[i],
                    bands.hpd_hi[i],
                    bands.band_lo[i],
                    bands.band_hi[i],
                    bands.simbas[i]
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct FitScalarSummary<'a> {
    runtime_seconds: f64,
    n_draws: usize,
    sigma_mean: Vec<f64>,
    phi_mean: Vec<f64>,
    mu_mean: Vec<f64>,
    bands: &'a SummaryBands,
    /// Metrics against ground truth, present when the dataset was simulated.
    metrics: Option<EvalReport>,
}

fn write_fit_summary(
    draws: &ModelDraws,
    bands: &SummaryBands,
    metrics: Option<EvalReport>,
    runtime: f64,
    path: &Path,
) -> Result<()> {
    let n = draws.n_draws().max(1) as f64;
    let mean_of = |rows: &[Vec<f64>]| -> Vec<f64> {
        if rows.is_empty() {
            return Vec::new();
        }
        let len = rows[0].len();
        let mut m = vec![0.0f64; len];
        for r in rows {
            for (a, b) in m.iter_mut().zip(r) {
                *a += b;
            }
        }
        for a in m.iter_mut() {
            *a /= n;
        }
        m
    };
    let summary = FitScalarSummary {
        runtime_seconds: runtime,
        n_draws: draws.n_draws(),
        sigma_mean: mean_of(&draws.sigma),
        phi_mean: mean_of(&draws.phi),
        mu_mean: mean_of(&draws.mu),
        bands,
        metrics,
    };
    write_json(&summary, path)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    /// Global RMSE of the posterior-mean coefficients against truth.
    pub rmse_beta: f64,
    /// Mean credible-interval width, averaged over coefficients.
    pub mciw: f64,
    /// Pointwise HPD coverage of the truth, averaged over coefficients.
    pub hpd_coverage: f64,
    /// Per-coefficient global band scores.
    pub gbpv: Vec<f64>,
    pub level: f64,
}

/// Evaluate a persisted fit against a truth file, writing `report.json`
/// into the fit directory.
pub fn run_eval(fit_dir: &Path, truth_path: &Path, level: f64) -> Result<EvalReport> {
    let fit = load_fit(fit_dir)?;
    let (beta_truth, p) = read_truth_csv(truth_path)?;
    let draws = &fit.draws;
    if p != draws.p || beta_truth.len() != draws.t_len * draws.p {
        return Err(Error::data(format!(
            "truth shape {}x{p} does not match fit {}x{}",
            beta_truth.len() / p.max(1),
            draws.t_len,
            draws.p
        )));
    }
    let report = evaluate_draws(draws, &beta_truth, level)?;
    write_json(&report, &fit_dir.join("report.json"))?;
    Ok(report)
}

/// Compute the evaluation metrics directly from draws.
pub fn evaluate_draws(
    draws: &ModelDraws,
    beta_truth: &[f64],
    level: f64,
) -> Result<EvalReport> {
    let mean = draws.posterior_mean_beta();
    let rmse_beta = rmse(&mean, beta_truth)?;
    let mut widths = 0.0;
    let mut coverage = 0.0;
    let mut scores = Vec::with_capacity(draws.p);
    for j in 0..draws.p {
        let paths = draws.beta_paths(j);
        let truth_j: Vec<f64> = (0..draws.t_len)
            .map(|t| beta_truth[t * draws.p + j])
            .collect();
        widths += mciw(&paths, level)?;
        coverage += hpd_coverage(&paths, &truth_j, level)?;
        scores.push(gbpv(&paths)?);
    }
    Ok(EvalReport {
        rmse_beta,
        mciw: widths / draws.p as f64,
        hpd_coverage: coverage / draws.p as f64,
        gbpv: scores,
        level,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoldoutReport {
    pub n_train: usize,
    pub n_test: usize,
    pub test_idx: Vec<usize>,
    /// RMSE of the posterior predictive mean at the held-out points.
    pub rmse_heldout: f64,
    /// Mean width of the equal-tailed predictive intervals at the held-out
    /// points.
    pub mciw_heldout: f64,
    /// Fraction of held-out observations inside their predictive interval.
    pub coverage_heldout: f64,
    pub level: f64,
    pub seed: u64,
}

/// Out-of-sample check on a fully observed series: hold out a random
/// fraction of the observations, fit on the rest, and score the posterior
/// predictive draws at the held-out points. Writes `report.json` under
/// `out_dir`.
pub fn run_holdout(
    data: &Dataset,
    model: &ModelKind,
    config: &McmcConfig,
    frac: f64,
    out_dir: &Path,
) -> Result<HoldoutReport> {
    if !(frac > 0.0 && frac < 1.0) {
        return Err(Error::invalid(format!(
            "holdout fraction must lie in (0, 1), got {frac}"
        )));
    }
    let observed: Vec<usize> = (0..data.t_len())
        .filter(|&t| !data.y[t].is_nan())
        .collect();
    let n_test = ((observed.len() as f64) * frac).floor() as usize;
    if n_test == 0 || n_test == observed.len() {
        return Err(Error::invalid(
            "holdout fraction leaves an empty train or test set",
        ));
    }
    let mut rng = crate::RngStream::new(config.seed, u64::MAX);
    let picked = rand::seq::index::sample(&mut rng, observed.len(), n_test);
    let mut test_idx: Vec<usize> = picked.iter().map(|i| observed[i]).collect();
    test_idx.sort_unstable();

    let mut train = data.clone();
    for &t in &test_idx {
        train.y[t] = f64::NAN;
    }
    train.truth = None;
    std::fs::create_dir_all(out_dir)?;
    let fit = run_fit(&train, model, config, out_dir)?;
    let draws = &fit.draws;

    // Held-out points are missing in the training fit, so the imputation
    // draws are exactly the posterior predictive samples there.
    let mut rmse_acc = 0.0;
    let mut width_acc = 0.0;
    let mut hits = 0usize;
    let mut scored = 0usize;
    for (k, &t) in draws.missing_idx.iter().enumerate() {
        if !test_idx.contains(&t) {
            continue;
        }
        let samples: Vec<f64> = draws.imputed.iter().map(|row| row[k]).collect();
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        let (lo, hi) = quantile_interval(&samples, 0.95)?;
        let truth = data.y[t];
        rmse_acc += (mean - truth) * (mean - truth);
        width_acc += hi - lo;
        if truth >= lo && truth <= hi {
            hits += 1;
        }
        scored += 1;
    }
    if scored == 0 {
        return Err(Error::invalid("no held-out points were scored"));
    }
    let report = HoldoutReport {
        n_train: observed.len() - n_test,
        n_test,
        test_idx,
        rmse_heldout: (rmse_acc / scored as f64).sqrt(),
        mciw_heldout: width_acc / scored as f64,
        coverage_heldout: hits as f64 / scored as f64,
        level: 0.95,
        seed: config.seed,
    };
    write_json(&report, &out_dir.join("report.json"))?;
    Ok(report)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchEntry {
    pub t_len: usize,
    pub iters: usize,
    pub reps: usize,
    pub seconds: f64,
    pub seconds_per_1k_iters: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchReport {
    pub entries: Vec<BenchEntry>,
    /// Least-squares slope of log cost against log length; 1 is linear
    /// scaling.
    pub log_log_slope: f64,
    /// Description of the machine the numbers were measured on.
    pub hardware: String,
}

fn hardware_description() -> String {
    let cpus = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let model = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|m| m.trim().to_string())
        })
        .unwrap_or_else(|| std::env::consts::ARCH.to_string());
    format!("{model}, {cpus} cpu(s), {}", std::env::consts::OS)
}

/// Time the sampler across series lengths: for each length, the minimum
/// wall time over `reps` repetitions of an `iters`-sweep run, normalized to
/// seconds per thousand iterations.
pub fn run_bench(
    lengths: &[usize],
    iters: usize,
    reps: usize,
    seed: u64,
    out_path: Option<&Path>,
) -> Result<BenchReport> {
    if lengths.len() < 2 {
        return Err(Error::invalid("benchmark needs at least two lengths"));
    }
    if lengths.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("benchmark lengths must be ascending"));
    }
    if iters < 2 || reps == 0 {
        return Err(Error::invalid("benchmark needs iters >= 2 and reps >= 1"));
    }
    let mut entries = Vec::with_capacity(lengths.len());
    for &t_len in lengths {
        let data = simulate_donoho("heavisine", t_len, 5.0, seed)?;
        let missing = data.missing_mask();
        let config = McmcConfig {
            n_iter: iters,
            burn: iters - 1,
            thin: 1,
            ..McmcConfig::default_with_seed(seed)
        };
        let mut best = f64::INFINITY;
        for _ in 0..reps {
            let start = Instant::now();
            let draws = fit_btf(&data.y, &missing, &BtfModelSpec::default(), &config)?;
            let elapsed = start.elapsed().as_secs_f64();
            assert_eq!(draws.n_draws(), 1);
            best = best.min(elapsed);
        }
        entries.push(BenchEntry {
            t_len,
            iters,
            reps,
            seconds: best,
            seconds_per_1k_iters: best * 1000.0 / iters as f64,
        });
    }
    let xs: Vec<f64> = entries.iter().map(|e| (e.t_len as f64).ln()).collect();
    let ys: Vec<f64> = entries
        .iter()
        .map(|e| e.seconds_per_1k_iters.ln())
        .collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    let report = BenchReport {
        entries,
        log_log_slope: num / den,
        hardware: hardware_description(),
    };
    if let Some(path) = out_path {
        write_json(&report, path)?;
    }
    Ok(report)
}

/// Load a dataset for fitting from a CSV produced by [`run_simulate`] or by
/// hand.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    ingest_csv(path)
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(file, value).map_err(Error::from)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    serde_json::from_reader(file).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::PriorFamily;

    fn tiny_config(seed: u64) -> McmcConfig {
        McmcConfig {
            n_iter: 240,
            burn: 120,
            thin: 2,
            ..McmcConfig::default_with_seed(seed)
        }
    }

    #[test]
    fn simulate_fit_eval_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let sim_dir = dir.path().join("sim");
        let meta = run_simulate(
            &SimKind::Donoho {
                function: "heavisine".into(),
                t_len: 60,
                rsnr: 5.0,
            },
            7,
            &sim_dir,
        )
        .unwrap();
        assert_eq!(meta.t_len, 60);
        assert!(meta.sigma > 0.0);

        let data = load_dataset(&sim_dir.join("data.csv")).unwrap();
        assert_eq!(data.t_len(), 60);

        let fit_dir = dir.path().join("fit");
        let result = run_fit(
            &data,
            &ModelKind::Btf(BtfModelSpec::default()),
            &tiny_config(7),
            &fit_dir,
        )
        .unwrap();
        assert_eq!(result.draws.n_draws(), 60);
        for name in [
            "manifest.json",
            "plotdata.csv",
            "summary.json",
            "draws_beta_chain0.csv",
            "draws_h_chain0.csv",
            "draws_phi_chain0.csv",
            "draws_mu_chain0.csv",
            "draws_sigma_chain0.csv",
        ] {
            assert!(fit_dir.join(name).exists(), "{name}");
        }

        let report = run_eval(&fit_dir, &sim_dir.join("truth.csv"), 0.95).unwrap();
        assert!(fit_dir.join("report.json").exists());
        assert!(report.rmse_beta > 0.0 && report.rmse_beta.is_finite());
        assert!(report.mciw > 0.0);
        assert!((0.0..=1.0).contains(&report.hpd_coverage));
        assert_eq!(report.gbpv.len(), 1);
    }

    #[test]
    fn load_fit_reproduces_the_draws() {
        let dir = tempfile::tempdir().unwrap();
        let data = simulate_donoho("blocks", 40, 5.0, 11).unwrap();
        let result = run_fit(
            &data,
            &ModelKind::Btf(BtfModelSpec {
                d: 1,
                prior: PriorFamily::Hs,
                ..BtfModelSpec::default()
            }),
            &McmcConfig {
                chains: 2,
                ..tiny_config(11)
            },
            dir.path(),
        )
        .unwrap();
        let loaded = load_fit(dir.path()).unwrap();
        assert_eq!(loaded.draws.n_draws(), result.draws.n_draws());
        for (a, b) in result.draws.beta.iter().zip(&loaded.draws.beta) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        assert_eq!(loaded.manifest.chains, 2);
        assert_eq!(loaded.draws.meta.prior, PriorFamily::Hs);
        // Evaluation through files equals evaluation in memory.
        let truth = data.truth.as_ref().unwrap();
        let direct = evaluate_draws(&result.draws, &truth.beta, 0.9).unwrap();
        let reloaded = evaluate_draws(&loaded.draws, &truth.beta, 0.9).unwrap();
        assert!((direct.rmse_beta - reloaded.rmse_beta).abs() < 1e-12);
        assert!((direct.mciw - reloaded.mciw).abs() < 1e-12);
    }

    #[test]
    fn tvp_fit_writes_coefficient_plotdata() {
        let dir = tempfile::tempdir().unwrap();
        let data = crate::data::simulate_tvp(40, 3, 4.0, false, 5).unwrap();
        run_fit(
            &data,
            &ModelKind::Tvp(TvpModelSpec::default()),
            &tiny_config(5),
            dir.path(),
        )
        .unwrap();
        let plot = std::fs::read_to_string(dir.path().join("plotdata.csv")).unwrap();
        let mut lines = plot.lines();
        assert_eq!(
            lines.next().unwrap(),
            "coefficient,time,mean,hpd_lo,hpd_hi,band_lo,band_hi,simbas"
        );
        assert_eq!(plot.lines().count(), 1 + 3 * 40);
        let report = run_eval(
            dir.path(),
            &{
                let p = dir.path().join("truth.csv");
                write_truth_csv(&data, &p).unwrap();
                p
            },
            0.95,
        )
        .unwrap();
        assert_eq!(report.gbpv.len(), 3);
        assert!(report.rmse_beta.is_finite());
    }

    #[test]
    fn missing_data_round_trips_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut data = simulate_donoho("heavisine", 50, 5.0, 13).unwrap();
        data.y[20] = f64::NAN;
        data.y[21] = f64::NAN;
        let result = run_fit(
            &data,
            &ModelKind::Btf(BtfModelSpec::default()),
            &tiny_config(13),
            dir.path(),
        )
        .unwrap();
        assert_eq!(result.manifest.missing_idx, vec![20, 21]);
        let loaded = load_fit(dir.path()).unwrap();
        assert_eq!(loaded.draws.imputed[0].len(), 2);
    }

    #[test]
    fn bench_produces_a_sane_slope() {
        let report = run_bench(&[40, 80, 160], 30, 1, 3, None).unwrap();
        assert_eq!(report.entries.len(), 3);
        for e in &report.entries {
            assert!(e.seconds > 0.0);
            assert!((e.seconds_per_1k_iters - e.seconds * 1000.0 / 30.0).abs() < 1e-12);
        }
        // Even a noisy tiny benchmark should be far from quadratic.
        assert!(report.log_log_slope < 1.8, "{}", report.log_log_slope);
        assert!(!report.hardware.is_empty());
        assert!(run_bench(&[80, 40], 30, 1, 3, None).is_err());
        assert!(run_bench(&[40], 30, 1, 3, None).is_err());
    }

    #[test]
    fn bench_time_scales_with_iterations() {
        let short = run_bench(&[200, 400], 60, 2, 5, None).unwrap();
        let long = run_bench(&[200, 400], 120, 2, 5, None).unwrap();
        for (a, b) in short.entries.iter().zip(&long.entries) {
            let ratio = b.seconds / a.seconds;
            assert!((1.5..=2.6).contains(&ratio), "{ratio}");
        }
    }

    #[test]
    fn holdout_protocol_scores_held_out_points() {
        let dir = tempfile::tempdir().unwrap();
        let data = simulate_donoho("heavisine", 100, 5.0, 21).unwrap();
        let report = run_holdout(
            &data,
            &ModelKind::Btf(BtfModelSpec::default()),
            &McmcConfig {
                n_iter: 600,
                burn: 300,
                thin: 3,
                ..McmcConfig::default_with_seed(21)
            },
            0.1,
            dir.path(),
        )
        .unwrap();
        assert_eq!(report.n_test, 10);
        assert_eq!(report.n_train, 90);
        assert_eq!(report.test_idx.len(), 10);
        assert!(report.test_idx.windows(2).all(|w| w[0] < w[1]));
        assert!(report.rmse_heldout.is_finite() && report.rmse_heldout > 0.0);
        // Interval prediction at held-out interior points should cover most
        // of the truth and beat the trivial constant predictor.
        let sd_y = {
            let m = data.y.iter().sum::<f64>() / data.y.len() as f64;
            (data.y.iter().map(|v| (v - m) * (v - m)).sum::<f64>()
                / (data.y.len() - 1) as f64)
                .sqrt()
        };
        assert!(report.rmse_heldout < sd_y, "{} vs {sd_y}", report.rmse_heldout);
        assert!(report.coverage_heldout >= 0.5);
        assert!(dir.path().join("report.json").exists());
        assert!(run_holdout(
            &data,
            &ModelKind::Btf(BtfModelSpec::default()),
            &McmcConfig::default_with_seed(1),
            1.5,
            dir.path()
        )
        .is_err());
    }

    #[test]
    fn truth_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let data = crate::data::simulate_tvp(25, 4, 3.0, false, 9).unwrap();
        let path = dir.path().join("truth.csv");
        write_truth_csv(&data, &path).unwrap();
        let (beta, p) = read_truth_csv(&path).unwrap();
        assert_eq!(p, 4);
        let truth = data.truth.as_ref().unwrap();
        assert_eq!(beta.len(), truth.beta.len());
        for (a, b) in beta.iter().zip(&truth.beta) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
