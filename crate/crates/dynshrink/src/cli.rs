//! Command-line interface: argument definitions and dispatch for the
//! `dynshrink` binary.

use crate::data::{ingest_csv, Dataset};
use crate::error::{Error, Result};
use crate::models::{BtfModelSpec, McmcConfig, ObsError, PriorFamily, TvpModelSpec};
use crate::runner::{
    run_bench, run_eval, run_fit, run_holdout, run_simulate, ModelKind, SimKind,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "dynshrink",
    version,
    about = "Locally adaptive Bayesian time series: trend filtering and \
             time-varying regression under dynamic shrinkage priors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a benchmark dataset and write data.csv, truth.csv, and
    /// sim_meta.json.
    Simulate {
        /// Test-function or regression design to draw from.
        #[arg(long, value_enum)]
        kind: SimulateKind,
        /// Series length (default 128 for test functions, 200 for
        /// regression designs).
        #[arg(long)]
        t_len: Option<usize>,
        /// Number of predictors (regression designs only).
        #[arg(long, default_value_t = 20)]
        p: usize,
        /// Root signal-to-noise ratio (default 7 for test functions, 3 for
        /// regression designs).
        #[arg(long)]
        rsnr: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a model to a CSV dataset and persist draws and summaries.
    Fit {
        /// Input CSV with header time,y[,x1..xp]; empty y cells are
        /// missing.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a persisted fit against ground truth, or run a random
    /// holdout experiment on a dataset.
    #[command(group(
        ArgGroup::new("mode").required(true).args(["fit", "input"])
    ))]
    Eval {
        /// Directory of a previous fit (pairs with --truth).
        #[arg(long, requires = "truth")]
        fit: Option<PathBuf>,
        /// Truth CSV written by simulate (pairs with --fit).
        #[arg(long, requires = "fit")]
        truth: Option<PathBuf>,
        /// Dataset CSV for a holdout experiment (pairs with --holdout).
        #[arg(long, requires = "holdout")]
        input: Option<PathBuf>,
        /// Fraction of observed points to hold out, in (0, 1).
        #[arg(long, requires = "input")]
        holdout: Option<f64>,
        #[command(flatten)]
        sampler: SamplerArgs,
        /// Credible level for interval metrics.
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory (holdout mode fits are written here; in truth
        /// mode the report lands in the fit directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the trend-filtering sampler across series lengths and report
    /// the log-log scaling slope.
    Bench {
        /// Ascending comma-separated series lengths.
        #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
        lengths: Vec<usize>,
        /// Sweeps per timed run.
        #[arg(long, default_value_t = 200)]
        iters: usize,
        /// Repetitions per length; the minimum time is kept.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write bench.json (printed to stdout regardless).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SimulateKind {
    Blocks,
    Bumps,
    Heavisine,
    Doppler,
    /// Regression design with independent standard normal predictors.
    TvpIid,
    /// Regression design with AR(1, 0.8) predictors.
    TvpAr,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ModelArg {
    #[default]
    Btf,
    Tvp,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum PriorArg {
    #[default]
    Dhs,
    Hs,
    Nig,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ObsArg {
    #[default]
    Const,
    Sv,
}

/// Model and sampler flags shared by `fit` and holdout-mode `eval`.
#[derive(Debug, Args)]
pub struct SamplerArgs {
    #[arg(long, value_enum, default_value_t)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t)]
    pub prior: PriorArg,
    /// Degree of differencing (default 2 for trend filtering, 1 for
    /// regression).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=2))]
    pub d: Option<u64>,
    #[arg(long = "obs-error", value_enum, default_value_t)]
    pub obs_error: ObsArg,
    #[arg(long, default_value_t = 10_000)]
    pub iters: usize,
    #[arg(long, default_value_t = 5_000)]
    pub burn: usize,
    #[arg(long, default_value_t = 5)]
    pub thin: usize,
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
}

impl SamplerArgs {
    fn prior(&self) -> PriorFamily {
        match self.prior {
            PriorArg::Dhs => PriorFamily::Dhs,
            PriorArg::Hs => PriorFamily::Hs,
            PriorArg::Nig => PriorFamily::Nig,
        }
    }

    fn obs(&self) -> ObsError {
        match self.obs_error {
            ObsArg::Const => ObsError::Constant,
            ObsArg::Sv => ObsError::Sv,
        }
    }

    fn model_kind(&self) -> ModelKind {
        match self.model {
            ModelArg::Btf => ModelKind::Btf(BtfModelSpec {
                d: self.d.unwrap_or(2) as usize,
                prior: self.prior(),
                obs_error: self.obs(),
            }),
            ModelArg::Tvp => ModelKind::Tvp(TvpModelSpec {
                d: self.d.unwrap_or(1) as usize,
                prior: self.prior(),
                obs_error: self.obs(),
            }),
        }
    }

    fn config(&self, seed: u64) -> McmcConfig {
        McmcConfig {
            n_iter: self.iters,
            burn: self.burn,
            thin: self.thin,
            chains: self.chains,
            ..McmcConfig::default_with_seed(seed)
        }
    }
}

/// Execute a parsed command. Errors bubble to `main`, which reports them on
/// stderr and exits with status 1; argument parsing itself exits with
/// status 2 via clap.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate {
            kind,
            t_len,
            p,
            rsnr,
            seed,
            out,
        } => {
            let sim = match kind {
                SimulateKind::Blocks
                | SimulateKind::Bumps
                | SimulateKind::Heavisine
                | SimulateKind::Doppler => SimKind::Donoho {
                    function: format!("{}", kind.name()),
                    t_len: t_len.unwrap_or(128),
                    rsnr: rsnr.unwrap_or(7.0),
                },
                SimulateKind::TvpIid | SimulateKind::TvpAr => SimKind::Tvp {
                    t_len: t_len.unwrap_or(200),
                    p: *p,
                    rsnr: rsnr.unwrap_or(3.0),
                    ar_design: matches!(kind, SimulateKind::TvpAr),
                },
            };
            let meta = run_simulate(&sim, *seed, out)?;
            println!(
                "simulated {} (T={}, p={}, rsnr={}, sigma={:.6}) -> {}",
                meta.kind,
                meta.t_len,
                meta.p,
                meta.rsnr,
                meta.sigma,
                out.display()
            );
            Ok(())
        }
        Command::Fit {
            input,
            sampler,
            seed,
            out,
        } => {
            let data = load_for(sampler, input)?;
            let result = run_fit(&data, &sampler.model_kind(), &sampler.config(*seed), out)?;
            println!(
                "fit {} ({}, {:?} prior) in {:.2}s: {} draws -> {}",
                result.manifest.model,
                format_dims(&data),
                result.manifest.prior,
                result.manifest.runtime_seconds,
                result.draws.n_draws(),
                out.display()
            );
            Ok(())
        }
        Command::Eval {
            fit,
            truth,
            input,
            holdout,
            sampler,
            level,
            seed,
            out,
        } => match (fit, input) {
            (Some(fit_dir), None) => {
                let truth = truth.as_ref().expect("clap enforces --truth with --fit");
                let report = run_eval(fit_dir, truth, *level)?;
                if let Some(dir) = out {
                    std::fs::create_dir_all(dir)?;
                    std::fs::copy(fit_dir.join("report.json"), dir.join("report.json"))?;
                }
                println!(
                    "eval vs truth: rmse={:.6} mciw={:.6} coverage={:.3} gbpv={:?}",
                    report.rmse_beta, report.mciw, report.hpd_coverage, report.gbpv
                );
                Ok(())
            }
            (None, Some(input)) => {
                let frac = holdout.expect("clap enforces --holdout with --input");
                let dir = out
                    .as_ref()
                    .ok_or_else(|| Error::invalid("holdout mode needs --out"))?;
                let data = load_for(sampler, input)?;
                let report = run_holdout(
                    &data,
                    &sampler.model_kind(),
                    &sampler.config(*seed),
                    frac,
                    dir,
                )?;
                println!(
                    "holdout {}/{}: rmse={:.6} mciw={:.6} coverage={:.3} -> {}",
                    report.n_test,
                    report.n_test + report.n_train,
                    report.rmse_heldout,
                    report.mciw_heldout,
                    report.coverage_heldout,
                    dir.display()
                );
                Ok(())
            }
            _ => unreachable!("clap enforces exactly one eval mode"),
        },
        Command::Bench {
            lengths,
            iters,
            reps,
            seed,
            out,
        } => {
            let report = run_bench(lengths, *iters, *reps, *seed, out.as_deref())?;
            println!("{:>10} {:>16}", "T", "sec/1k iters");
            for e in &report.entries {
                println!("{:>10} {:>16.4}", e.t_len, e.seconds_per_1k_iters);
            }
            println!("log-log slope: {:.3}", report.log_log_slope);
            println!("hardware: {}", report.hardware);
            Ok(())
        }
    }
}

impl SimulateKind {
    fn name(&self) -> &'static str {
        match self {
            SimulateKind::Blocks => "blocks",
            SimulateKind::Bumps => "bumps",
            SimulateKind::Heavisine => "heavisine",
            SimulateKind::Doppler => "doppler",
            SimulateKind::TvpIid => "tvp-iid",
            SimulateKind::TvpAr => "tvp-ar",
        }
    }
}

fn load_for(sampler: &SamplerArgs, input: &std::path::Path) -> Result<Dataset> {
    let data = ingest_csv(input)?;
    if matches!(sampler.model, ModelArg::Tvp) && data.x.is_none() {
        return Err(Error::invalid(
            "regression fit needs predictor columns in the input CSV",
        ));
    }
    Ok(data)
}

fn format_dims(data: &Dataset) -> String {
    if data.p > 1 {
        format!("T={}, p={}", data.t_len(), data.p)
    } else {
        format!("T={}", data.t_len())
    }
}
