//! Price of randomness: coverage of threshold-random selection relative to
//! nearest selection, as the RRH density grows past the interferer density.
//! The loss at the optimal threshold collapses onto the profile
//! f(x) = (1 - e^-x)(1 - e^-1/x)(1/x + x), which dips to 2(1 - 1/e)^2 at
//! x = 1 and then climbs back toward 1: random selection becomes free in
//! dense deployments.
//!
//!     cargo run --release --example selection_loss

use rrh_select::analytics::{
    asymptotic_f, db_to_linear, relative_loss, sinc_norm, threshold_opt_approx, CoverageInputs,
};
use std::f64::consts::PI;

fn main() -> rrh_select::Result<()> {
    let (lambda_u, beta) = (1e-5 / PI, 4.0);
    let ratios = [1.0, 1.6, 2.5, 4.0, 10.0, 25.0, 100.0];

    println!("relative coverage of random vs nearest selection at the optimal threshold");
    print!("{:>12}", "ratio");
    for theta_db in [0.0, 3.0, 6.0] {
        print!("  theta {theta_db:>2} dB");
    }
    println!();
    for &ratio in &ratios {
        print!("{ratio:>12.1}");
        for theta_db in [0.0, 3.0, 6.0] {
            let theta = db_to_linear(theta_db);
            let lambda = ratio * lambda_u;
            let r_star = threshold_opt_approx(theta, lambda, lambda_u, beta);
            let loss = relative_loss(&CoverageInputs {
                r_th: r_star,
                theta,
                lambda_rrh: lambda,
                lambda_user: lambda_u,
                beta,
            });
            // same number through the asymptotic profile
            let x = ratio.sqrt() * sinc_norm(2.0 / beta)?.sqrt() / theta.powf(1.0 / beta);
            assert!((loss - asymptotic_f(x)?).abs() < 1e-12);
            print!("  {loss:>11.4}");
        }
        println!();
    }
    println!();
    for theta_db in [0.0, 3.0, 6.0] {
        let theta = db_to_linear(theta_db);
        let dip_end = theta.powf(2.0 / beta) / sinc_norm(2.0 / beta)?;
        println!(
            "theta = {theta_db} dB: the loss dips until density ratio {dip_end:.2} (where x = 1), then rises"
        );
    }
    Ok(())
}
