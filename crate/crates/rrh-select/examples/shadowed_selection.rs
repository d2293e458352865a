//! Received-power thresholds under lognormal shadowing: the propagation
//! losses ||d||^beta / S form a process whose intensity measure
//! lambda pi E[S^(2/beta)] t^(2/beta) predicts candidate counts, and the
//! optimal power threshold reproduces the candidate count of the
//! shadow-adjusted distance threshold.
//!
//!     cargo run --release --example shadowed_selection

use rrh_select::analytics::{intensity_measure, shadow_moments, threshold_opt_shadow};
use rrh_select::montecarlo::{
    auto_window_radius, derive_experiment_id, estimate_candidate_count, ExperimentConfig, Policy,
};
use rrh_select::{ShadowingModel, SystemParams};
use std::f64::consts::PI;

fn count_for(
    policy: Policy,
    shadowing: &ShadowingModel,
    lambda: f64,
    lambda_u: f64,
    beta: f64,
) -> rrh_select::Result<(f64, f64)> {
    let window = auto_window_radius(lambda, lambda_u, beta, &policy, shadowing);
    let params = SystemParams::new(lambda, lambda_u, beta, 1.0, window)?;
    let cfg = ExperimentConfig {
        experiment_id: derive_experiment_id(&params, shadowing, &policy),
        params,
        shadowing: shadowing.clone(),
        policy,
        theta_grid: vec![],
        n_trials: 10_000,
        master_seed: 5,
    };
    let stats = estimate_candidate_count(&cfg)?;
    Ok((stats.mean, stats.ci_half_width))
}

fn main() -> rrh_select::Result<()> {
    let (lambda, lambda_u, beta) = (1e-4 / PI, 1e-5 / PI, 4.0);
    let shadowing = ShadowingModel::Lognormal { mu_db: 0.0, sigma_db: 8.0 };
    let m = shadow_moments(&shadowing, beta);
    println!("lognormal shadowing, sigma = 8 dB, beta = 4:");
    println!(
        "  E[S^(2/beta)] = {:.4}   E[1/S] = {:.4}   E_S = {:.4}\n",
        m.m_2beta, m.m_inv, m.e_s
    );

    // candidate counts at a probe loss scale t
    let t = 1e8;
    let predicted = intensity_measure(t, lambda, beta, &m);
    let (mean, hw) = count_for(
        Policy::PowerRandom { p_th: 1.0 / t, l: 1, partial: false },
        &shadowing,
        lambda,
        lambda_u,
        beta,
    )?;
    println!("candidates with received power above 1/t, t = {t:.0e}:");
    println!("  intensity measure predicts {predicted:.4}, simulation {mean:.4} +/- {hw:.4}\n");

    // the optimal power threshold matches the shadow-adjusted distance rule
    let (r_sh, p_star) = threshold_opt_shadow(1.0, lambda, lambda_u, beta, &m);
    println!("optimal thresholds at theta = 0 dB:");
    println!("  distance rule R*_sh = {r_sh:.2} m, power rule P*_th = {p_star:.3e}");
    let target = lambda * PI * r_sh * r_sh;
    let (mean_p, hw_p) = count_for(
        Policy::PowerRandom { p_th: p_star, l: 1, partial: false },
        &shadowing,
        lambda,
        lambda_u,
        beta,
    )?;
    let (mean_d, hw_d) = count_for(
        Policy::ThresholdRandom { r_th: r_sh, l: 1, partial: false },
        &shadowing,
        lambda,
        lambda_u,
        beta,
    )?;
    println!("  mean candidates: lambda pi R^2 = {target:.4}");
    println!("    power threshold   {mean_p:.4} +/- {hw_p:.4}");
    println!("    distance threshold {mean_d:.4} +/- {hw_d:.4}");
    Ok(())
}
