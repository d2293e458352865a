//! Sweep the selection threshold and watch coverage peak: too small a
//! threshold starves the candidate set, too large a threshold serves from
//! far away. The peak sharpens as RRHs densify.
//!
//!     cargo run --release --example threshold_sweep

use rrh_select::analytics::{sir_ccdf_approx, sir_ccdf_exact, threshold_opt_approx, CoverageInputs};
use std::f64::consts::PI;

fn main() {
    let (lambda_u, beta, theta) = (1e-5 / PI, 4.0, 1.0);
    for lambda_pow in [1e-3, 1e-4, 1e-5] {
        let lambda = lambda_pow / PI;
        let r_star = threshold_opt_approx(theta, lambda, lambda_u, beta);
        println!("lambda = {lambda_pow:.0e}/pi  (closed-form optimum {r_star:.1} m)");
        println!("{:>10} {:>9} {:>9}", "R_th (m)", "exact", "approx");
        for scale in [0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0] {
            let r_th = r_star * scale;
            let inputs = CoverageInputs {
                r_th,
                theta,
                lambda_rrh: lambda,
                lambda_user: lambda_u,
                beta,
            };
            let marker = if scale == 1.0 { "  <- R*" } else { "" };
            println!(
                "{r_th:>10.1} {:>9.4} {:>9.4}{marker}",
                sir_ccdf_exact(&inputs),
                sir_ccdf_approx(&inputs)
            );
        }
        // 90%-of-max width quantifies how sharp the peak is
        let p_star = sir_ccdf_exact(&CoverageInputs {
            r_th: r_star,
            theta,
            lambda_rrh: lambda,
            lambda_user: lambda_u,
            beta,
        });
        let mut lo = r_star;
        while sir_ccdf_exact(&CoverageInputs { r_th: lo, theta, lambda_rrh: lambda, lambda_user: lambda_u, beta }) > 0.9 * p_star {
            lo /= 1.01;
        }
        let mut hi = r_star;
        while sir_ccdf_exact(&CoverageInputs { r_th: hi, theta, lambda_rrh: lambda, lambda_user: lambda_u, beta }) > 0.9 * p_star {
            hi *= 1.01;
        }
        println!("90%-of-peak threshold range: [{lo:.1}, {hi:.1}] m ({:.1}x)\n", hi / lo);
    }
}
