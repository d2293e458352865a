//! Small statistical helpers shared by the Monte-Carlo engine and the
//! validation suites: Wilson proportion intervals, a two-sided
//! Kolmogorov-Smirnov test and a chi-square goodness-of-fit test.

use statrs::function::gamma::gamma_ur;

/// z quantile for a two-sided 95% interval.
pub const Z_95: f64 = 1.959963984540054;

/// Wilson score half-width at 95% for `successes` out of `trials`.
///
/// Stays meaningful near 0 and 1 where the Wald interval collapses.
pub fn wilson_half_width(successes: u64, trials: u64) -> f64 {
    assert!(trials > 0, "wilson interval needs at least one trial");
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

/// 95% half-width for a sample mean (normal approximation).
pub fn mean_half_width(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return f64::INFINITY;
    }
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Z_95 * (var / n).sqrt()
}

/// Two-sided KS statistic and asymptotic p-value of `sorted` samples against
/// the continuous CDF `cdf`. Samples must be sorted ascending.
pub fn ks_test(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = sorted.len();
    assert!(n > 0, "KS test needs samples");
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / nf).max((i as f64 + 1.0) / nf - f);
    }
    // Stephens' finite-sample correction to the Kolmogorov limit law.
    let lambda = (nf.sqrt() + 0.12 + 0.11 / nf.sqrt()) * d;
    (d, kolmogorov_survival(lambda))
}

/// Survival function of the Kolmogorov distribution. The alternating series
/// 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2) converges fast only for large
/// lambda; below 1.18 the dual theta-function form of the CDF is used.
fn kolmogorov_survival(lambda: f64) -> f64 {
    use std::f64::consts::PI;
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        let x = (-PI * PI / (8.0 * lambda * lambda)).exp();
        let cdf = (2.0 * PI).sqrt() / lambda * (x + x.powi(9) + x.powi(25) + x.powi(49));
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64 * lambda).powi(2)).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Chi-square goodness-of-fit p-value of observed counts against expected
/// counts (same length, expected all positive; dof = cells - 1).
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2, "chi-square needs at least two cells");
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            debug_assert!(e > 0.0);
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    if stat <= 0.0 {
        return 1.0;
    }
    let dof = (observed.len() - 1) as f64;
    gamma_ur(dof / 2.0, stat / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_matches_wald_in_the_bulk() {
        // at p = 0.5 and large n, Wilson ~ Wald = z/(2 sqrt n)
        let hw = wilson_half_width(50_000, 100_000);
        let wald = Z_95 * 0.5 / (100_000f64).sqrt();
        assert!((hw - wald).abs() < 1e-5);
        // never zero at the extremes
        assert!(wilson_half_width(0, 1000) > 0.0);
        assert!(wilson_half_width(1000, 1000) > 0.0);
    }

    #[test]
    fn ks_accepts_the_true_law() {
        // deterministic stratified uniform sample
        let n = 4000;
        let samples: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let (d, p) = ks_test(&samples, |x| x.clamp(0.0, 1.0));
        assert!(d < 0.01);
        assert!(p > 0.99, "p = {p}");
    }

    #[test]
    fn ks_rejects_a_wrong_law() {
        let n = 4000;
        let samples: Vec<f64> = (0..n).map(|i| ((i as f64 + 0.5) / n as f64).powi(2)).collect();
        let (_, p) = ks_test(&samples, |x| x.clamp(0.0, 1.0));
        assert!(p < 1e-6, "p = {p}");
    }

    #[test]
    fn chi_square_sane() {
        let expected = vec![100.0; 10];
        let perfect = vec![100u64; 10];
        assert!(chi_square_p(&perfect, &expected) > 0.999);
        let skewed: Vec<u64> = (0..10).map(|i| 60 + 8 * i as u64).collect();
        assert!(chi_square_p(&skewed, &expected) < 0.01);
    }
}
