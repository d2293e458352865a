//! Cross-validate the closed-form SIR CCDF of threshold-based random RRH
//! selection against the Monte-Carlo engine, for a couple of selection
//! thresholds at desk scale.
//!
//!     cargo run --release --example verify_ccdf

use rrh_select::analytics::{db_to_linear, sir_ccdf_approx, sir_ccdf_exact, CoverageInputs};
use rrh_select::montecarlo::{auto_window_radius, derive_experiment_id, estimate_ccdf, ExperimentConfig, Policy};
use rrh_select::{ShadowingModel, SystemParams};
use std::f64::consts::PI;

fn main() -> rrh_select::Result<()> {
    let (lambda, lambda_u, beta) = (1e-5 / PI, 1e-6 / PI, 4.0);
    let theta_db: Vec<f64> = (0..7).map(|i| -10.0 + 5.0 * i as f64).collect();
    let theta: Vec<f64> = theta_db.iter().map(|&db| db_to_linear(db)).collect();
    let trials = 20_000;

    println!("threshold-random selection, lambda = 1e-5/pi, lambda_u = 1e-6/pi, beta = 4");
    println!("{trials} trials per threshold\n");
    for r_th in [250.0, 1000.0, 2000.0] {
        let policy = Policy::ThresholdRandom { r_th, l: 1, partial: false };
        let shadowing = ShadowingModel::None;
        let window = auto_window_radius(lambda, lambda_u, beta, &policy, &shadowing);
        let params = SystemParams::new(lambda, lambda_u, beta, 1.0, window)?;
        let cfg = ExperimentConfig {
            experiment_id: derive_experiment_id(&params, &shadowing, &policy),
            params,
            shadowing,
            policy,
            theta_grid: theta.clone(),
            n_trials: trials,
            master_seed: 1,
        };
        let curve = estimate_ccdf(&cfg)?;

        println!("R_th = {r_th} m  (window {:.0} m)", window);
        println!("{:>9} {:>9} {:>9} {:>11} {:>9}", "theta_dB", "exact", "approx", "monte-carlo", "|err|");
        for (i, &db) in theta_db.iter().enumerate() {
            let inputs = CoverageInputs {
                r_th,
                theta: theta[i],
                lambda_rrh: lambda,
                lambda_user: lambda_u,
                beta,
            };
            let exact = sir_ccdf_exact(&inputs);
            println!(
                "{db:>9} {exact:>9.4} {:>9.4} {:>5.4} +/- {:<6.4} {:>7.4}",
                sir_ccdf_approx(&inputs),
                curve.estimates[i],
                curve.ci_half_width[i],
                (curve.estimates[i] - exact).abs()
            );
        }
        println!();
    }
    Ok(())
}
