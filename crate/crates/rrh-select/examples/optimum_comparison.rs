//! How much coverage does the closed-form selection threshold give away
//! against a numeric maximization of the exact CCDF? (Answer: under 2%
//! across three decades of RRH density.)
//!
//!     cargo run --release --example optimum_comparison

use rrh_select::analytics::db_to_linear;
use rrh_select::optimizer::optimize_threshold_numeric;
use std::f64::consts::PI;

fn main() -> rrh_select::Result<()> {
    let (lambda_u, beta) = (1e-5 / PI, 4.0);
    for lambda_pow in [1e-3, 1e-4, 1e-5] {
        let lambda = lambda_pow / PI;
        println!("lambda = {lambda_pow:.0e}/pi, lambda_u = 1e-5/pi, beta = 4");
        println!(
            "{:>9} {:>12} {:>10} {:>12} {:>10} {:>8}",
            "theta_dB", "R*_numeric", "p_numeric", "R*_closed", "p_closed", "gap"
        );
        for theta_db in [-10.0, -4.0, 0.0, 6.0, 12.0, 20.0] {
            let opt = optimize_threshold_numeric(db_to_linear(theta_db), lambda, lambda_u, beta, None)?;
            println!(
                "{theta_db:>9} {:>12.2} {:>10.4} {:>12.2} {:>10.4} {:>7.2}%",
                opt.r_star_numeric,
                opt.p_at_numeric,
                opt.r_star_approx,
                opt.p_at_approx,
                100.0 * opt.relative_gap
            );
        }
        println!();
    }
    Ok(())
}
