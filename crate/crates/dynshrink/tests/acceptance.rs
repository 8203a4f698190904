//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line with the measured quantities. Tolerances are part of the
//! release contract and must not be loosened without a corresponding
//! contract change.

use dynshrink::banded::{
    build_difference_precision, cholesky_banded, posterior_mean, sample_banded_gaussian,
};
use dynshrink::data::{simulate_donoho, simulate_tvp, Dataset};
use dynshrink::dists::{sample_polya_gamma, sample_z, tpb_density, TpbParams, ZParams};
use dynshrink::dsp::omori::OmoriTable;
use dynshrink::dsp::{forward_simulate, update_h, update_s, update_xi, DspState};
use dynshrink::inference::{hpd_coverage, mciw, rmse};
use dynshrink::models::{
    fit_btf, fit_tvp, update_beta_tvp, BtfModelSpec, McmcConfig, ModelDraws, PriorFamily,
    TvpModelSpec,
};
use dynshrink::rng::RngStream;
use dynshrink::runner::run_bench;
use dynshrink::stats::{chi_square_gof, integrate, ks_one_sample, ks_two_sample};
use rand::Rng;
use rand_distr::{Beta as BetaSampler, Distribution, Gamma, StandardNormal};
use statrs::distribution::{Beta as BetaRef, ContinuousCDF};
use std::time::Instant;

fn report(id: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {id}: {verdict} ({detail})");
    assert!(ok, "acceptance {id} failed: {detail}");
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Shrinkage coefficient of a log-variance: κ = 1/(1 + e^h).
fn kappa_of(h: f64) -> f64 {
    1.0 / (1.0 + h.exp())
}

// --- Criterion 1 -----------------------------------------------------------
// The three constructions of the static local-scale law — λ² as a ratio of
// Gammas, κ as a Beta draw, and η as a Z draw mapped through exp — must be
// indistinguishable. Everything is compared on the bounded κ scale.

#[test]
fn criterion_01_sampling_routes_agree() {
    let start = Instant::now();
    let n = 100_000usize;
    let mut worst_p = 1.0f64;
    for (case, &(alpha, beta)) in [(0.5f64, 0.5f64), (0.5, 1.0), (1.0, 1.0)].iter().enumerate() {
        let seed = 101 + case as u64;

        // Route A: λ² = G_α/G_β with independent Gammas has the inverted-Beta
        // law, so κ = G_β/(G_α + G_β).
        let mut rng_a = RngStream::new(seed, 0);
        let ga = Gamma::new(alpha, 1.0).unwrap();
        let gb = Gamma::new(beta, 1.0).unwrap();
        let route_a: Vec<f64> = (0..n)
            .map(|_| {
                loop {
                    let a: f64 = ga.sample(&mut rng_a);
                    let b: f64 = gb.sample(&mut rng_a);
                    if a > 0.0 && b > 0.0 {
                        return b / (a + b);
                    }
                }
            })
            .collect();

        // Route B: κ directly Beta(β, α).
        let mut rng_b = RngStream::new(seed, 1);
        let bd = BetaSampler::new(beta, alpha).unwrap();
        let route_b: Vec<f64> = (0..n)
            .map(|_| loop {
                let k: f64 = bd.sample(&mut rng_b);
                if k > 0.0 && k < 1.0 {
                    return k;
                }
            })
            .collect();

        // Route C: η ~ Z(α, β, 0, 1), then κ = 1/(1 + e^η).
        let zp = ZParams::new(alpha, beta, 0.0, 1.0).unwrap();
        let mut rng_c = RngStream::new(seed, 2);
        let route_c: Vec<f64> = (0..n)
            .map(|_| kappa_of(sample_z(&zp, &mut rng_c).unwrap()))
            .collect();

        for (xs, ys) in [
            (&route_a, &route_b),
            (&route_a, &route_c),
            (&route_b, &route_c),
        ] {
            let (_, p) = ks_two_sample(xs, ys);
            worst_p = worst_p.min(p);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "01 sampling-routes",
        worst_p > 0.01 && elapsed < 10.0,
        &format!("min KS p = {worst_p:.4} over 9 pairwise tests, {elapsed:.1}s"),
    );
}

// --- Criterion 2 -----------------------------------------------------------
// The Pólya-Gamma augmentation: the two-block chain ξ | η ~ PG(α+β, η),
// η | ξ ~ N((α−β)/(2ξ), 1/ξ) leaves the Z marginal invariant, and the PG
// sampler has the right first moments.

#[test]
fn criterion_02_polya_gamma_mixture() {
    let zp = ZParams::horseshoe();
    let n = 100_000usize;
    let thin = 20usize;
    let burn = 2_000usize;
    let mut rng = RngStream::new(201, 0);
    let mut eta = 0.0f64;
    let mut chain = Vec::with_capacity(n);
    for i in 0..(n * thin + burn) {
        let xi = sample_polya_gamma(zp.alpha + zp.beta, eta, &mut rng).unwrap();
        let e: f64 = StandardNormal.sample(&mut rng);
        eta = 0.5 * (zp.alpha - zp.beta) / xi + e / xi.sqrt();
        if i >= burn && (i - burn) % thin == 0 {
            chain.push(eta);
        }
    }
    let mut rng_d = RngStream::new(201, 1);
    let direct: Vec<f64> = (0..n).map(|_| sample_z(&zp, &mut rng_d).unwrap()).collect();
    let (_, p) = ks_two_sample(&chain, &direct);

    let mut rng_m = RngStream::new(202, 0);
    let m = 1_000_000usize;
    let mean0 = (0..m)
        .map(|_| sample_polya_gamma(1.0, 0.0, &mut rng_m).unwrap())
        .sum::<f64>()
        / m as f64;
    let mean2 = (0..m)
        .map(|_| sample_polya_gamma(1.0, 2.0, &mut rng_m).unwrap())
        .sum::<f64>()
        / m as f64;
    let target2 = 1.0f64.tanh() / 4.0;
    let ok = p > 0.01 && (mean0 - 0.25).abs() < 0.002 && (mean2 - target2).abs() < 0.002;
    report(
        "02 pg-mixture",
        ok,
        &format!(
            "KS p = {p:.4}, E[PG(1,0)] = {mean0:.5}, E[PG(1,2)] = {mean2:.5} (target {target2:.5})"
        ),
    );
}

// --- Criterion 3 -----------------------------------------------------------
// The one-step conditional law of the shrinkage coefficient: given κ_t, the
// forward-simulated κ_{t+1} follows the three-parameter Beta with
// γ_t = τ² λ_t^{2φ} = exp(μ(1−φ) + φ h_t). Bin probabilities come from
// quadrature of tpb_density after the variance-stabilizing map κ = sin²θ.

#[test]
fn criterion_03_forward_conditional_law() {
    let n = 100_000usize;
    let bins = 20usize;
    let mut worst_p = 1.0f64;
    let mut seed = 301u64;
    for &phi in &[0.5f64, 0.9] {
        for &kappa_t in &[0.01f64, 0.5] {
            // τ = 1 so μ = 0.
            let h_t = ((1.0 - kappa_t) / kappa_t).ln();
            let gamma = (phi * h_t).exp();
            let zp = ZParams::horseshoe();
            let mut rng = RngStream::new(seed, 0);
            seed += 1;
            let draws: Vec<f64> = (0..n)
                .map(|_| kappa_of(phi * h_t + sample_z(&zp, &mut rng).unwrap()))
                .collect();

            // Interior bin edges at the theoretical quantiles, obtained from
            // the Beta representation: κ' = u/(u + γ(1−u)), u ~ Beta(β, α).
            let beta_ref = BetaRef::new(0.5, 0.5).unwrap();
            let mut edges = Vec::with_capacity(bins - 1);
            for k in 1..bins {
                let u = beta_ref.inverse_cdf(k as f64 / bins as f64);
                edges.push(u / (u + gamma * (1.0 - u)));
            }

            let params = TpbParams::new(0.5, 0.5, gamma).unwrap();
            let g = |theta: f64| {
                let k = theta.sin() * theta.sin();
                2.0 * tpb_density(k, &params).unwrap() * theta.sin() * theta.cos()
            };
            let to_theta = |x: f64| x.sqrt().asin();
            let mut theta_edges = Vec::with_capacity(bins + 1);
            theta_edges.push(to_theta(1e-12));
            theta_edges.extend(edges.iter().map(|&x| to_theta(x)));
            theta_edges.push(to_theta(1.0 - 1e-9));
            let expected: Vec<f64> = theta_edges
                .windows(2)
                .map(|w| n as f64 * integrate(&g, w[0], w[1], 1e-12))
                .collect();

            let mut observed = vec![0.0f64; bins];
            for &x in &draws {
                let idx = edges.partition_point(|e| *e <= x);
                observed[idx] += 1.0;
            }
            let (_, p) = chi_square_gof(&observed, &expected);
            worst_p = worst_p.min(p);
        }
    }
    report(
        "03 conditional-law",
        worst_p > 0.01,
        &format!("min chi-square p = {worst_p:.4} over 4 (phi, kappa) settings"),
    );
}

// --- Criterion 4 -----------------------------------------------------------
// Concentration behavior of the dynamic prior. First: after an essentially
// unshrunk point (κ_t = 10⁻⁴) with φ = 0.9, the next step still leaves most
// mass at κ < 0.1. Second: at the posterior level, a large observation
// (|y| = 20) compounded with the conditional prior (γ = 0.5) leaves over
// 95% of the κ mass below 0.1, by quadrature of the unnormalized posterior
// (1−κ)^{−1/2} [1+(γ−1)κ]^{−1} exp(−y²κ/2).

#[test]
fn criterion_04_concentration_probabilities() {
    let start = Instant::now();

    let phi = 0.9f64;
    let kappa_t = 1e-4f64;
    let h_t = ((1.0 - kappa_t) / kappa_t).ln();
    let zp = ZParams::horseshoe();
    let mut rng = RngStream::new(401, 0);
    let n = 200_000usize;
    let hits = (0..n)
        .filter(|_| kappa_of(phi * h_t + sample_z(&zp, &mut rng).unwrap()) < 0.1)
        .count();
    let p_sim = hits as f64 / n as f64;

    let y = 20.0f64;
    let gamma = 0.5f64;
    let g = |k: f64| (1.0 - k).powf(-0.5) / (1.0 + (gamma - 1.0) * k) * (-0.5 * y * y * k).exp();
    let below = integrate(&g, 0.0, 0.1, 1e-16);
    // Tail mass over (0.1, 1) with κ = 1 − u² to absorb the endpoint
    // singularity.
    let g_tail = |u: f64| {
        let k = 1.0 - u * u;
        2.0 / (1.0 + (gamma - 1.0) * k) * (-0.5 * y * y * k).exp()
    };
    let above = integrate(&g_tail, 0.0, 0.9f64.sqrt(), 1e-18);
    let p_post = below / (below + above);

    let elapsed = start.elapsed().as_secs_f64();
    let ok = p_sim > 0.95 && p_post > 0.95 && elapsed < 30.0;
    report(
        "04 concentration",
        ok,
        &format!("P(kappa'<0.1 | kappa=1e-4) = {p_sim:.4}, posterior mass below 0.1 = {p_post:.6}, {elapsed:.1}s"),
    );
}

// --- Criterion 5 -----------------------------------------------------------
// Stationary shape of the shrinkage coefficient: with φ = 0 the κ_t are iid
// Beta(1/2, 1/2); with φ = 0.95 the stationary distribution piles more mass
// at both ends.

#[test]
fn criterion_05_stationary_shape() {
    let mut rng = RngStream::new(501, 0);
    let h = forward_simulate(0.0, 0.0, 0.5, 0.5, 100_000, &mut rng).unwrap();
    let kappas: Vec<f64> = h.iter().map(|&v| kappa_of(v)).collect();
    let beta_ref = BetaRef::new(0.5, 0.5).unwrap();
    let (_, p) = ks_one_sample(&kappas, |k| beta_ref.cdf(k));

    let edge_mass = |path: &[f64]| {
        path.iter()
            .filter(|&&v| {
                let k = kappa_of(v);
                k <= 0.05 || k >= 0.95
            })
            .count() as f64
            / path.len() as f64
    };
    let t_long = 1_000_000usize;
    let mut rng_a = RngStream::new(502, 0);
    let mass_static = edge_mass(&forward_simulate(0.0, 0.0, 0.5, 0.5, t_long, &mut rng_a).unwrap());
    let mut rng_b = RngStream::new(502, 1);
    let mass_sticky =
        edge_mass(&forward_simulate(0.0, 0.95, 0.5, 0.5, t_long, &mut rng_b).unwrap());

    let ok = p > 0.01 && mass_sticky > mass_static;
    report(
        "05 stationary-shape",
        ok,
        &format!(
            "KS vs Beta(1/2,1/2) p = {p:.4}; edge mass phi=0.95: {mass_sticky:.4} vs phi=0: {mass_static:.4}"
        ),
    );
}

// --- Criterion 6 -----------------------------------------------------------
// Banded linear algebra against dense oracles assembled from scratch:
// factor/solve/sample and the precision builders (tridiagonal and
// pentadiagonal difference penalties, and the stacked regression precision
// with its Kronecker-structured innovation block), relative tolerance 1e−9.

fn dense_cholesky_oracle(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for j in 0..n {
        let mut s = a[j][j];
        for m in 0..j {
            s -= l[j][m] * l[j][m];
        }
        assert!(s > 0.0, "dense oracle: matrix not positive definite");
        l[j][j] = s.sqrt();
        for i in (j + 1)..n {
            let mut s = a[i][j];
            for m in 0..j {
                s -= l[i][m] * l[j][m];
            }
            l[i][j] = s / l[j][j];
        }
    }
    l
}

fn dense_forward_sub(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut y = vec![0.0f64; n];
    for i in 0..n {
        let mut s = b[i];
        for m in 0..i {
            s -= l[i][m] * y[m];
        }
        y[i] = s / l[i][i];
    }
    y
}

fn dense_back_sub_t(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in (i + 1)..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    x
}

fn dense_chol_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    dense_back_sub_t(l, &dense_forward_sub(l, b))
}

/// Rows of the order-`d` difference penalty, initialization rows first.
fn penalty_rows(t_len: usize, d: usize, phi: Option<f64>) -> Vec<(usize, Vec<f64>)> {
    let p = phi.unwrap_or(1.0);
    let mut rows = Vec::new();
    for t in 0..d {
        rows.push((t, vec![1.0]));
    }
    for t in d..t_len {
        if d == 1 {
            rows.push((t - 1, vec![-p, 1.0]));
        } else {
            rows.push((t - 2, vec![1.0, -2.0, 1.0]));
        }
    }
    rows
}

fn dense_difference_precision(
    obs_prec: &[f64],
    innov_prec: &[f64],
    d: usize,
    phi: Option<f64>,
) -> Vec<Vec<f64>> {
    let n = obs_prec.len();
    let mut q = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        q[i][i] = obs_prec[i];
    }
    for (t, (start, coeffs)) in penalty_rows(n, d, phi).into_iter().enumerate() {
        for (a, &ca) in coeffs.iter().enumerate() {
            for (b, &cb) in coeffs.iter().enumerate() {
                q[start + a][start + b] += innov_prec[t] * ca * cb;
            }
        }
    }
    q
}

fn dense_tvp_precision(
    x: &[f64],
    p: usize,
    obs_prec: &[f64],
    innov_prec: &[f64],
    d: usize,
) -> Vec<Vec<f64>> {
    let t_len = obs_prec.len();
    let n = t_len * p;
    let mut q = vec![vec![0.0f64; n]; n];
    for t in 0..t_len {
        for j in 0..p {
            for k in 0..p {
                q[t * p + j][t * p + k] += obs_prec[t] * x[t * p + j] * x[t * p + k];
            }
        }
    }
    for (t, (start, coeffs)) in penalty_rows(t_len, d, None).into_iter().enumerate() {
        for j in 0..p {
            let w = innov_prec[t * p + j];
            for (a, &ca) in coeffs.iter().enumerate() {
                for (b, &cb) in coeffs.iter().enumerate() {
                    q[(start + a) * p + j][(start + b) * p + j] += w * ca * cb;
                }
            }
        }
    }
    q
}

fn max_rel_err(ours: &[f64], oracle: &[f64]) -> f64 {
    ours.iter()
        .zip(oracle)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0f64, f64::max)
}

#[test]
fn criterion_06_banded_dense_oracles() {
    let tol = 1e-9f64;
    let mut worst = 0.0f64;
    let mut rng = RngStream::new(601, 0);
    let mut draw_seed = 610u64;

    // Difference-penalty precisions: tridiagonal (first differences, with and
    // without the AR coefficient) and pentadiagonal (second differences).
    for &(d, phi) in &[(1usize, None), (1, Some(0.7f64)), (2, None)] {
        let t_len = 10usize;
        let obs: Vec<f64> = (0..t_len).map(|_| 0.5 + rng.gen::<f64>()).collect();
        let innov: Vec<f64> = (0..t_len).map(|_| 0.3 + rng.gen::<f64>()).collect();
        let q = build_difference_precision(d, &obs, &innov, phi).unwrap();
        let q_dense = dense_difference_precision(&obs, &innov, d, phi);

        let built: Vec<f64> = q.to_dense().into_iter().flatten().collect();
        let oracle: Vec<f64> = q_dense.iter().flatten().copied().collect();
        worst = worst.max(max_rel_err(&built, &oracle));

        let l_dense = dense_cholesky_oracle(&q_dense);
        let chol = cholesky_banded(&q).unwrap();
        let log_det_oracle: f64 = 2.0 * (0..t_len).map(|i| l_dense[i][i].ln()).sum::<f64>();
        worst = worst.max((chol.log_det() - log_det_oracle).abs() / log_det_oracle.abs().max(1.0));

        let b: Vec<f64> = (0..t_len).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect();
        worst = worst.max(max_rel_err(
            &chol.solve_lower(&b),
            &dense_forward_sub(&l_dense, &b),
        ));
        worst = worst.max(max_rel_err(&chol.solve(&b), &dense_chol_solve(&l_dense, &b)));
        worst = worst.max(max_rel_err(
            &posterior_mean(&q, &b).unwrap(),
            &dense_chol_solve(&l_dense, &b),
        ));

        // The random draw consumes one standard normal per coordinate after
        // the deterministic lower solve, so a twin stream replicates it.
        let mut rng_draw = RngStream::new(draw_seed, 0);
        let ours = sample_banded_gaussian(&q, &b, &mut rng_draw).unwrap();
        let mut a = dense_forward_sub(&l_dense, &b);
        let mut rng_twin = RngStream::new(draw_seed, 0);
        for v in a.iter_mut() {
            let e: f64 = StandardNormal.sample(&mut rng_twin);
            *v += e;
        }
        worst = worst.max(max_rel_err(&ours, &dense_back_sub_t(&l_dense, &a)));
        draw_seed += 1;
    }

    // Stacked regression precision with the Kronecker-structured penalty,
    // validated end-to-end through the joint coefficient draw.
    for &d in &[1usize, 2] {
        let (t_len, p) = (8usize, 3usize);
        let x: Vec<f64> = (0..t_len * p)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                e
            })
            .collect();
        let y: Vec<f64> = (0..t_len).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let obs: Vec<f64> = (0..t_len).map(|_| 0.5 + rng.gen::<f64>()).collect();
        let innov: Vec<f64> = (0..t_len * p).map(|_| 0.3 + rng.gen::<f64>()).collect();

        let q_dense = dense_tvp_precision(&x, p, &obs, &innov, d);
        let l_dense = dense_cholesky_oracle(&q_dense);
        let mut linear = vec![0.0f64; t_len * p];
        for t in 0..t_len {
            for j in 0..p {
                linear[t * p + j] = x[t * p + j] * obs[t] * y[t];
            }
        }
        let mut rng_draw = RngStream::new(draw_seed, 0);
        let ours = update_beta_tvp(&y, &x, p, &obs, &innov, d, &mut rng_draw).unwrap();
        let mut a = dense_forward_sub(&l_dense, &linear);
        let mut rng_twin = RngStream::new(draw_seed, 0);
        for v in a.iter_mut() {
            let e: f64 = StandardNormal.sample(&mut rng_twin);
            *v += e;
        }
        worst = worst.max(max_rel_err(&ours, &dense_back_sub_t(&l_dense, &a)));
        draw_seed += 1;
    }

    report(
        "06 banded-oracles",
        worst < tol,
        &format!("max relative error vs dense oracles = {worst:.2e}"),
    );
}

// --- Criteria 7 and 8 ------------------------------------------------------

struct FitScores {
    rmse_beta: f64,
    rmse_y: f64,
    mciw: f64,
    coverage: f64,
}

fn score_fit(draws: &ModelDraws, data: &Dataset) -> FitScores {
    let truth = &data.truth.as_ref().unwrap().beta;
    let mean_beta = draws.posterior_mean_beta();
    let rmse_beta = rmse(&mean_beta, truth).unwrap();

    let fitted = draws.fitted_paths(data.x.as_deref());
    let n_draws = fitted.len() as f64;
    let mut y_hat = vec![0.0f64; draws.t_len];
    for path in &fitted {
        for (m, v) in y_hat.iter_mut().zip(path) {
            *m += v / n_draws;
        }
    }
    let y_truth: Vec<f64> = (0..draws.t_len)
        .map(|t| match &data.x {
            None => truth[t],
            Some(xs) => (0..data.p)
                .map(|j| xs[t * data.p + j] * truth[t * data.p + j])
                .sum(),
        })
        .collect();
    let rmse_y = rmse(&y_hat, &y_truth).unwrap();

    let paths = draws.beta_paths(0);
    let truth_0: Vec<f64> = (0..draws.t_len).map(|t| truth[t * draws.p]).collect();
    FitScores {
        rmse_beta,
        rmse_y,
        mciw: mciw(&paths, 0.95).unwrap(),
        coverage: hpd_coverage(&paths, &truth_0, 0.95).unwrap(),
    }
}

// Desk-scale trend-filtering study: Blocks and Bumps at T=128, RSNR=7,
// 20 replicates, 10000 iterations per fit. The dynamic prior must beat the
// static priors on point estimation, tighten intervals relative to the
// static horseshoe, and keep pointwise coverage.

#[test]
fn criterion_07_trend_filtering_study() {
    let start = Instant::now();
    let replicates = 20usize;
    let priors = [PriorFamily::Dhs, PriorFamily::Hs, PriorFamily::Nig];
    // scores[function][prior][replicate]
    let mut scores: Vec<Vec<Vec<FitScores>>> = Vec::new();
    for (f_idx, function) in ["bumps", "blocks"].iter().enumerate() {
        let mut per_prior: Vec<Vec<FitScores>> = vec![Vec::new(), Vec::new(), Vec::new()];
        for rep in 0..replicates {
            let data_seed = 7_000 + (f_idx * 100 + rep) as u64;
            let data = simulate_donoho(function, 128, 7.0, data_seed).unwrap();
            let missing = data.missing_mask();
            for (p_idx, &prior) in priors.iter().enumerate() {
                let spec = BtfModelSpec {
                    d: 2,
                    prior,
                    obs_error: dynshrink::models::ObsError::Constant,
                };
                let config = McmcConfig::default_with_seed(7_500 + rep as u64);
                let draws = fit_btf(&data.y, &missing, &spec, &config).unwrap();
                per_prior[p_idx].push(score_fit(&draws, &data));
            }
        }
        scores.push(per_prior);
    }

    let med = |f: usize, p: usize| {
        median(&scores[f][p].iter().map(|s| s.rmse_beta).collect::<Vec<_>>())
    };
    let bumps_ordered = med(0, 0) < med(0, 1) && med(0, 1) < med(0, 2);

    let blocks_wins = (0..replicates)
        .filter(|&r| scores[1][0][r].rmse_beta < scores[1][2][r].rmse_beta)
        .count();

    let mciw_wins: usize = (0..2)
        .map(|f| {
            (0..replicates)
                .filter(|&r| scores[f][0][r].mciw <= scores[f][1][r].mciw)
                .count()
        })
        .sum();

    let mean_cov = |f: usize| {
        scores[f][0].iter().map(|s| s.coverage).sum::<f64>() / replicates as f64
    };
    let cov_bumps = mean_cov(0);
    let cov_blocks = mean_cov(1);

    let elapsed = start.elapsed().as_secs_f64();
    let ok = bumps_ordered
        && blocks_wins >= 16
        && mciw_wins >= 30
        && cov_bumps >= 0.85
        && cov_blocks >= 0.85
        && elapsed < 3_600.0;
    report(
        "07 trend-study",
        ok,
        &format!(
            "bumps median RMSE dhs/hs/nig = {:.3}/{:.3}/{:.3}, blocks dhs<nig in {blocks_wins}/20, \
             MCIW dhs<=hs in {mciw_wins}/40, coverage {cov_bumps:.3}/{cov_blocks:.3}, {elapsed:.0}s",
            med(0, 0),
            med(0, 1),
            med(0, 2)
        ),
    );
}

// Desk-scale regression study: T=200, p=20, RSNR=3, 20 replicates. Median
// RMSE of both the coefficient paths and the fitted values must be smallest
// under the dynamic prior.

#[test]
fn criterion_08_regression_study() {
    let start = Instant::now();
    let replicates = 20usize;
    let priors = [PriorFamily::Dhs, PriorFamily::Hs, PriorFamily::Nig];
    let mut rmse_beta: Vec<Vec<f64>> = vec![Vec::new(), Vec::new(), Vec::new()];
    let mut rmse_y: Vec<Vec<f64>> = vec![Vec::new(), Vec::new(), Vec::new()];
    for rep in 0..replicates {
        let data = simulate_tvp(200, 20, 3.0, false, 8_000 + rep as u64).unwrap();
        let missing = data.missing_mask();
        let x = data.x.as_ref().unwrap();
        for (p_idx, &prior) in priors.iter().enumerate() {
            let spec = TvpModelSpec {
                d: 1,
                prior,
                obs_error: dynshrink::models::ObsError::Constant,
            };
            // Posterior-mean RMSEs for the two shrinkage priors sit within a
            // few thousandths of each other on this design, so each fit keeps
            // 5000 draws to push the estimator's Monte Carlo error below the
            // margins being compared.
            let config = McmcConfig {
                n_iter: 30_000,
                burn: 5_000,
                thin: 5,
                ..McmcConfig::default_with_seed(8_500 + rep as u64)
            };
            let draws = fit_tvp(&data.y, &missing, x, data.p, &spec, &config).unwrap();
            let s = score_fit(&draws, &data);
            rmse_beta[p_idx].push(s.rmse_beta);
            rmse_y[p_idx].push(s.rmse_y);
        }
    }
    let mb: Vec<f64> = rmse_beta.iter().map(|v| median(v)).collect();
    let my: Vec<f64> = rmse_y.iter().map(|v| median(v)).collect();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = mb[0] < mb[1] && mb[0] < mb[2] && my[0] < my[1] && my[0] < my[2];
    report(
        "08 regression-study",
        ok,
        &format!(
            "median RMSE(beta) dhs/hs/nig = {:.4}/{:.4}/{:.4}, median RMSE(yhat) = {:.4}/{:.4}/{:.4}, {elapsed:.0}s",
            mb[0], mb[1], mb[2], my[0], my[1], my[2]
        ),
    );
}

// --- Criterion 9 -----------------------------------------------------------
// Linear scaling: per-iteration cost of the trend filter grows linearly in
// the series length over three decades.

#[test]
fn criterion_09_linear_scaling() {
    let bench = run_bench(&[1_000, 10_000, 100_000], 120, 2, 901, None).unwrap();
    let slope = bench.log_log_slope;
    let ok = (0.8..=1.3).contains(&slope);
    report(
        "09 linear-scaling",
        ok,
        &format!("log-log slope = {slope:.3} on {}", bench.hardware),
    );
}

// --- Criterion 10 ----------------------------------------------------------
// Successive-conditional stationarity of the shrinkage block: starting from
// the prior and alternating a model draw of ω with the posterior updates of
// (h, ξ, s) leaves the mean shrinkage level flat. The two halves of a long
// run must agree within three batch-means standard errors.

#[test]
fn criterion_10_gibbs_invariance() {
    let t_len = 50usize;
    let sweeps = 20_000usize;
    let (mu, phi, c) = (0.0f64, 0.8f64, 1e-10f64);
    let table = OmoriTable::standard();
    let mut rng = RngStream::new(1_001, 0);

    let h = forward_simulate(mu, phi, 0.5, 0.5, t_len, &mut rng).unwrap();
    let s: Vec<usize> = (0..t_len)
        .map(|_| {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            for (i, comp) in table.components().iter().enumerate() {
                acc += comp.prob;
                if u < acc {
                    return i;
                }
            }
            table.len() - 1
        })
        .collect();
    let mut state = DspState {
        h,
        s,
        xi: vec![0.25; t_len],
        xi_mu: 0.25,
        mu,
        phi,
        alpha: 0.5,
        beta: 0.5,
    };
    update_xi(&mut state, mu, &mut rng).unwrap();

    let mut kappa_bar = Vec::with_capacity(sweeps);
    let mut omega = vec![0.0f64; t_len];
    for _ in 0..sweeps {
        for (w, &ht) in omega.iter_mut().zip(&state.h) {
            let e: f64 = StandardNormal.sample(&mut rng);
            *w = (0.5 * ht).exp() * e;
        }
        update_h(&mut state, &omega, c, &table, &mut rng).unwrap();
        update_xi(&mut state, mu, &mut rng).unwrap();
        update_s(&mut state, &omega, c, &table, &mut rng);
        kappa_bar.push(state.kappa().iter().sum::<f64>() / t_len as f64);
    }

    let half = sweeps / 2;
    let batch = 250usize;
    let batch_se = |xs: &[f64]| {
        let means: Vec<f64> = xs
            .chunks(batch)
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect();
        let m = means.iter().sum::<f64>() / means.len() as f64;
        let var = means.iter().map(|v| (v - m) * (v - m)).sum::<f64>()
            / (means.len() - 1) as f64;
        (var / means.len() as f64).sqrt()
    };
    let m1 = kappa_bar[..half].iter().sum::<f64>() / half as f64;
    let m2 = kappa_bar[half..].iter().sum::<f64>() / half as f64;
    let se = (batch_se(&kappa_bar[..half]).powi(2) + batch_se(&kappa_bar[half..]).powi(2)).sqrt();
    let ok = (m1 - m2).abs() < 3.0 * se;
    report(
        "10 gibbs-invariance",
        ok,
        &format!(
            "half means {m1:.4} vs {m2:.4}, |diff| = {:.5} < 3 SE = {:.5}",
            (m1 - m2).abs(),
            3.0 * se
        ),
    );
}

// --- Criterion 11 ----------------------------------------------------------
// Reduction checks. First: an intercept-only regression is the trend filter,
// bit for bit, under matched seeds. Second: the dynamic prior pinned at
// φ = 0 matches the static horseshoe distributionally on the innovation
// scale draws, at a noise level chosen so both variants place the same
// prior on the global scale.

#[test]
fn criterion_11_reduction_checks() {
    let data = simulate_donoho("heavisine", 60, 5.0, 1_101).unwrap();
    let missing = data.missing_mask();
    let ones = vec![1.0f64; 60];
    let mut identical = true;
    for d in [1usize, 2] {
        let config = McmcConfig {
            n_iter: 400,
            burn: 200,
            thin: 2,
            ..McmcConfig::default_with_seed(1_102)
        };
        let btf = fit_btf(
            &data.y,
            &missing,
            &BtfModelSpec {
                d,
                prior: PriorFamily::Dhs,
                obs_error: dynshrink::models::ObsError::Constant,
            },
            &config,
        )
        .unwrap();
        let tvp = fit_tvp(
            &data.y,
            &missing,
            &ones,
            1,
            &TvpModelSpec {
                d,
                prior: PriorFamily::Dhs,
                obs_error: dynshrink::models::ObsError::Constant,
            },
            &config,
        )
        .unwrap();
        identical &= btf.beta == tvp.beta
            && btf.h == tvp.h
            && btf.phi == tvp.phi
            && btf.mu == tvp.mu
            && btf.sigma == tvp.sigma;
    }

    // Noise scale σ = √T makes the half-Cauchy scale σ/√T of the dynamic
    // variant equal the static variant's unit scale.
    let t_len = 40usize;
    let probe = simulate_donoho("heavisine", t_len, 1.0, 1_103).unwrap();
    let sd_truth = probe.truth.as_ref().unwrap().sigma;
    let rsnr = sd_truth / (t_len as f64).sqrt();
    let data = simulate_donoho("heavisine", t_len, rsnr, 1_103).unwrap();
    let missing = data.missing_mask();
    // The global log-scale mixes slowly in this noise-dominated regime
    // (integrated autocorrelation time ≈ 500 iterations), so retained draws
    // are spaced far enough apart to be effectively independent — otherwise
    // the KS calibration below would be invalid.
    let config = McmcConfig {
        n_iter: 502_000,
        burn: 2_000,
        thin: 1_000,
        ..McmcConfig::default_with_seed(1_104)
    };
    let pinned = McmcConfig {
        pin_phi: Some(0.0),
        seed: 1_105,
        ..config
    };
    let spec = |prior| BtfModelSpec {
        d: 2,
        prior,
        obs_error: dynshrink::models::ObsError::Constant,
    };
    let dhs = fit_btf(&data.y, &missing, &spec(PriorFamily::Dhs), &pinned).unwrap();
    let hs = fit_btf(&data.y, &missing, &spec(PriorFamily::Hs), &config).unwrap();
    let mut worst_p = 1.0f64;
    for t in [10usize, 20, 30] {
        let (_, p) = ks_two_sample(&dhs.scale_draws_at(0, t), &hs.scale_draws_at(0, t));
        worst_p = worst_p.min(p);
    }

    let ok = identical && worst_p > 0.01;
    report(
        "11 reductions",
        ok,
        &format!(
            "intercept-only regression bit-identical to trend filter: {identical}; \
             phi=0 vs static KS min p = {worst_p:.4}"
        ),
    );
}
