//! Closed-form SIR coverage results for threshold-based random RRH selection
//! under a homogeneous PPP network: the exact CCDF, its rational
//! approximation, optimal selection thresholds (distance, received-power and
//! multi-RRH variants), the nearest-selection baseline, the relative-loss
//! functional with its asymptotic form, and the lognormal shadowing moments
//! feeding the propagation-loss intensity measure.
//!
//! All angles of attack share two conventions: `sinc` is the normalized
//! `sin(pi x)/(pi x)` (so `1/sinc(2/beta)` is the standard PPP interference
//! constant), and SIR targets are linear-scale; dB conversion lives at the
//! CLI boundary.

use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, PI};

use crate::error::{Error, Result};
use crate::geometry::ShadowingModel;

/// Arguments of the coverage formulas that involve a selection threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageInputs {
    /// Distance selection threshold, meters.
    pub r_th: f64,
    /// SIR target, linear.
    pub theta: f64,
    pub lambda_rrh: f64,
    pub lambda_user: f64,
    pub beta: f64,
}

impl CoverageInputs {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("r_th", self.r_th),
            ("theta", self.theta),
            ("lambda_rrh", self.lambda_rrh),
            ("lambda_user", self.lambda_user),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        if !(self.beta > 2.0) || !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and > 2, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Moments of the shadowing law needed by the received-power threshold
/// analysis: `m_2beta = E[S^(2/beta)]`, `m_inv = E[1/S]` and
/// `e_s = E[S^(2/beta)] * E[1/S]^(2/beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowMoments {
    pub m_2beta: f64,
    pub m_inv: f64,
    pub e_s: f64,
}

impl ShadowMoments {
    /// Degenerate S == 1 moments.
    pub const UNIT: ShadowMoments = ShadowMoments {
        m_2beta: 1.0,
        m_inv: 1.0,
        e_s: 1.0,
    };
}

/// Normalized sinc: sin(pi x) / (pi x) on the open interval (0, 1).
pub fn sinc_norm(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sinc_norm domain is 0 < x < 1 (x = 2/beta with beta > 2), got {x}"
        )));
    }
    Ok((PI * x).sin() / (PI * x))
}

#[inline]
fn sinc_2_over(beta: f64) -> f64 {
    debug_assert!(beta > 2.0);
    let x = 2.0 / beta;
    (PI * x).sin() / (PI * x)
}

/// Interference exponent scale of the Laplace functional:
/// c = pi * lambda_u * theta^(2/beta) / sinc(2/beta), in 1/m^2.
pub fn interference_scale(lambda_user: f64, theta: f64, beta: f64) -> f64 {
    debug_assert!(lambda_user >= 0.0 && theta >= 0.0 && beta > 2.0);
    PI * lambda_user * theta.powf(2.0 / beta) / sinc_2_over(beta)
}

/// (1 - e^(-z)) / z, series-expanded below 1e-6 to stay smooth as z -> 0.
#[inline]
fn em1_over(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z < 1e-6 {
        1.0 - z / 2.0 + z * z / 6.0
    } else {
        -(-z).exp_m1() / z
    }
}

/// Clamp a probability to [0, 1]; anything beyond rounding distance from the
/// interval is a formula bug, not an input problem.
#[inline]
fn clamp_prob(p: f64) -> f64 {
    debug_assert!(
        (-1e-12..=1.0 + 1e-12).contains(&p),
        "probability {p} escaped [0,1] beyond rounding tolerance"
    );
    p.clamp(0.0, 1.0)
}

/// Exact SIR CCDF of threshold-based random selection:
/// (1 - e^(-lambda pi R^2)) * (1 - e^(-c R^2)) / (c R^2).
pub fn sir_ccdf_exact(inputs: &CoverageInputs) -> f64 {
    let r2 = inputs.r_th * inputs.r_th;
    let hit = -(-inputs.lambda_rrh * PI * r2).exp_m1();
    let c = interference_scale(inputs.lambda_user, inputs.theta, inputs.beta);
    clamp_prob(hit * em1_over(c * r2))
}

/// Rational approximation of the exact CCDF obtained from e^(-x) ~ 1/(1+x):
/// lambda pi R^2 / ((1 + lambda pi R^2)(1 + c R^2)). Always a lower bound.
pub fn sir_ccdf_approx(inputs: &CoverageInputs) -> f64 {
    let r2 = inputs.r_th * inputs.r_th;
    let a = inputs.lambda_rrh * PI * r2;
    let c = interference_scale(inputs.lambda_user, inputs.theta, inputs.beta);
    clamp_prob(a / ((1.0 + a) * (1.0 + c * r2)))
}

/// Selection threshold maximizing the approximate CCDF:
/// (sinc(2/beta) / (pi^2 lambda lambda_u theta^(2/beta)))^(1/4), meters.
pub fn threshold_opt_approx(theta: f64, lambda_rrh: f64, lambda_user: f64, beta: f64) -> f64 {
    debug_assert!(lambda_rrh > 0.0 && lambda_user > 0.0 && theta > 0.0 && beta > 2.0);
    (sinc_2_over(beta) / (PI * PI * lambda_rrh * lambda_user * theta.powf(2.0 / beta))).powf(0.25)
}

/// SIR CCDF of nearest-RRH selection:
/// lambda sinc(2/beta) / (lambda_u theta^(2/beta) + lambda sinc(2/beta)).
pub fn sir_ccdf_nearest(theta: f64, lambda_rrh: f64, lambda_user: f64, beta: f64) -> f64 {
    debug_assert!(lambda_rrh > 0.0 && lambda_user >= 0.0 && theta >= 0.0 && beta > 2.0);
    let s = lambda_rrh * sinc_2_over(beta);
    clamp_prob(s / (lambda_user * theta.powf(2.0 / beta) + s))
}

/// Coverage of threshold-based random selection relative to the nearest-RRH
/// baseline; at most 1 in this analytic model.
pub fn relative_loss(inputs: &CoverageInputs) -> f64 {
    sir_ccdf_exact(inputs)
        / sir_ccdf_nearest(inputs.theta, inputs.lambda_rrh, inputs.lambda_user, inputs.beta)
}

/// Asymptotic loss profile f(x) = (1 - e^(-x))(1 - e^(-1/x))(1/x + x) for
/// x > 0. Evaluating the relative loss at the optimal threshold gives
/// exactly f(sqrt(lambda/lambda_u) sqrt(sinc(2/beta)) / theta^(1/beta)),
/// and f(x) -> 1 as x -> infinity.
pub fn asymptotic_f(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "asymptotic_f domain is x > 0, got {x}"
        )));
    }
    let inv = 1.0 / x;
    Ok(-(-x).exp_m1() * -(-inv).exp_m1() * (inv + x))
}

/// Closed-form lognormal (or degenerate) shadowing moments for a given
/// pathloss exponent: E[S^a] = exp(a mu_ln + a^2 sigma_ln^2 / 2) with
/// a in {2/beta, -1} and the dB spread mapped by ln(10)/10.
pub fn shadow_moments(model: &ShadowingModel, beta: f64) -> ShadowMoments {
    debug_assert!(beta > 2.0);
    match model {
        ShadowingModel::None => ShadowMoments::UNIT,
        ShadowingModel::Lognormal { mu_db, sigma_db } => {
            let mu = mu_db * LN_10 / 10.0;
            let sigma = sigma_db * LN_10 / 10.0;
            let moment = |a: f64| (a * mu + a * a * sigma * sigma / 2.0).exp();
            let m_2beta = moment(2.0 / beta);
            let m_inv = moment(-1.0);
            ShadowMoments {
                m_2beta,
                m_inv,
                e_s: m_2beta * m_inv.powf(2.0 / beta),
            }
        }
    }
}

/// Optimal thresholds when received power replaces distance in phase 1.
///
/// Returns `(r_sh, p_th)`: the shadowing-aware distance threshold
/// `(sinc(2/beta) / (pi^2 lambda lambda_u theta^(2/beta) E_S))^(1/4)` and the
/// received-power threshold `E[S^(2/beta)]^(beta/2) * r_sh^(-beta)` whose
/// average candidate count matches it.
pub fn threshold_opt_shadow(
    theta: f64,
    lambda_rrh: f64,
    lambda_user: f64,
    beta: f64,
    moments: &ShadowMoments,
) -> (f64, f64) {
    let r_sh = (sinc_2_over(beta)
        / (PI * PI * lambda_rrh * lambda_user * theta.powf(2.0 / beta) * moments.e_s))
        .powf(0.25);
    let p_th = moments.m_2beta.powf(beta / 2.0) * r_sh.powf(-beta);
    (r_sh, p_th)
}

/// Intensity measure of the propagation-loss process {||x||^beta / S}:
/// Lambda([0, t)) = lambda pi E[S^(2/beta)] t^(2/beta), the expected number
/// of RRHs with received power above 1/t.
pub fn intensity_measure(t: f64, lambda_rrh: f64, beta: f64, moments: &ShadowMoments) -> f64 {
    debug_assert!(t >= 0.0);
    lambda_rrh * PI * moments.m_2beta * t.powf(2.0 / beta)
}

/// Selection threshold for L-RRH selection with maximum ratio combining:
/// the L-fold combining gain is equivalent to lowering the target to
/// theta/L, which scales the optimal threshold by L^(1/(2 beta)).
pub fn threshold_opt_multi(l: u32, theta: f64, lambda_rrh: f64, lambda_user: f64, beta: f64) -> f64 {
    debug_assert!(l >= 1);
    ((l as f64).powf(2.0 / beta) * sinc_2_over(beta)
        / (PI * PI * lambda_rrh * lambda_user * theta.powf(2.0 / beta)))
    .powf(0.25)
}

pub fn db_to_linear(db: f64) -> f64 {
    (db * LN_10 / 10.0).exp()
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference parameter set used throughout: lambda = 1e-4/pi,
    // lambda_u = 1e-5/pi, beta = 4, theta = 1 (0 dB).
    const LAM: f64 = 1e-4 / PI;
    const LAM_U: f64 = 1e-5 / PI;

    fn reference_inputs(r_th: f64) -> CoverageInputs {
        CoverageInputs {
            r_th,
            theta: 1.0,
            lambda_rrh: LAM,
            lambda_user: LAM_U,
            beta: 4.0,
        }
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn sinc_values() {
        assert!(rel_err(sinc_norm(0.5).unwrap(), std::f64::consts::FRAC_2_PI) < 1e-15);
        assert!(rel_err(sinc_norm(2.0 / 3.0).unwrap(), 0.413_496_671_566_344_1) < 1e-14);
        assert!((sinc_norm(1e-12).unwrap() - 1.0).abs() < 1e-12);
        assert!(sinc_norm(0.0).is_err());
        assert!(sinc_norm(1.0).is_err());
        assert!(sinc_norm(-0.5).is_err());
    }

    #[test]
    fn interference_scale_values() {
        let c = interference_scale(LAM_U, 1.0, 4.0);
        assert!(rel_err(c, 1.570_796_326_794_896_7e-5) < 1e-14);
        // linear in lambda_u
        assert!(rel_err(interference_scale(2.0 * LAM_U, 1.0, 4.0), 2.0 * c) < 1e-15);
        // vanishes with the target
        assert!(interference_scale(LAM_U, 1e-300, 4.0) < 1e-150);
    }

    #[test]
    fn exact_ccdf_reference_point() {
        let r_star = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        assert!(rel_err(r_star, 158.843_713_190_675_57) < 1e-13);
        assert!(rel_err(sir_ccdf_exact(&reference_inputs(r_star)), 0.759_391_667_443_516_6) < 1e-13);
    }

    #[test]
    fn exact_ccdf_limits() {
        // empty candidate set almost surely
        assert!(sir_ccdf_exact(&reference_inputs(1e-9)) < 1e-15);
        // interference factor -> 1 as theta -> 0
        let mut tiny = reference_inputs(300.0);
        tiny.theta = 1e-14;
        let hit = -(-LAM * PI * 300.0f64.powi(2)).exp_m1();
        assert!(rel_err(sir_ccdf_exact(&tiny), hit) < 1e-7);
    }

    #[test]
    fn approx_ccdf_reference_point() {
        let r_star = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        assert!(rel_err(sir_ccdf_approx(&reference_inputs(r_star)), 0.512_887_558_481_448_7) < 1e-13);
        // vanishes for huge thresholds
        assert!(sir_ccdf_approx(&reference_inputs(1e9)) < 1e-8);
    }

    #[test]
    fn threshold_scalings() {
        let base = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        // theta -> 16 theta at beta = 4 shrinks the threshold by 16^(-1/8)
        let scaled = threshold_opt_approx(16.0, LAM, LAM_U, 4.0);
        assert!(rel_err(scaled / base, 16.0f64.powf(-0.125)) < 1e-13);
        // symmetric in the density product
        assert!(rel_err(threshold_opt_approx(1.0, LAM_U, LAM, 4.0), base) < 1e-15);
    }

    #[test]
    fn nearest_ccdf_values() {
        assert!(rel_err(sir_ccdf_nearest(1.0, LAM, LAM_U, 4.0), 0.864_244_751_836_366_7) < 1e-13);
        // lambda = lambda_u, theta = 1, beta = 4 gives 2/(pi + 2)
        assert!(rel_err(sir_ccdf_nearest(1.0, LAM, LAM, 4.0), 2.0 / (PI + 2.0)) < 1e-14);
        assert!(rel_err(sir_ccdf_nearest(1e-300, LAM, LAM_U, 4.0), 1.0) < 1e-12);
    }

    #[test]
    fn relative_loss_reference_point() {
        let r_star = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        assert!(rel_err(relative_loss(&reference_inputs(r_star)), 0.878_676_631_625_409_4) < 1e-13);
        // both interference factors -> 1 as theta -> 0
        let mut tiny = reference_inputs(200.0);
        tiny.theta = 1e-14;
        let hit = -(-LAM * PI * 200.0f64.powi(2)).exp_m1();
        assert!(rel_err(relative_loss(&tiny), hit) < 1e-7);
    }

    #[test]
    fn asymptotic_f_values() {
        assert!(rel_err(asymptotic_f(1.0).unwrap(), 0.799_152_801_787_456_1) < 1e-14);
        assert!(rel_err(asymptotic_f(100.0).unwrap(), 0.995_116_126_745_697_7) < 1e-14);
        assert!(asymptotic_f(1e3).unwrap() > 0.999);
        assert!(asymptotic_f(0.0).is_err());
        assert!(asymptotic_f(-1.0).is_err());
        assert!(asymptotic_f(f64::NAN).is_err());
    }

    #[test]
    fn shadow_moment_values() {
        assert_eq!(shadow_moments(&ShadowingModel::None, 4.0), ShadowMoments::UNIT);
        let m = shadow_moments(
            &ShadowingModel::Lognormal { mu_db: 0.0, sigma_db: 8.0 },
            4.0,
        );
        assert!(rel_err(m.m_2beta, 1.528_293_645_779_848_2) < 1e-14);
        assert!(rel_err(m.m_inv, 5.455_407_918_702_32) < 1e-14);
        assert!(rel_err(m.e_s, 3.569_607_145_699_128_7) < 1e-14);
        // Jensen: e_s >= 1 for any zero-dB-mean lognormal
        for sigma_db in [0.5, 2.0, 4.0, 8.0, 12.0] {
            let m = shadow_moments(&ShadowingModel::Lognormal { mu_db: 0.0, sigma_db }, 3.3);
            assert!(m.e_s >= 1.0);
        }
    }

    #[test]
    fn shadow_threshold_values() {
        // degenerate moments collapse to the no-shadowing threshold pair
        let r_star = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        let (r_sh, p_th) = threshold_opt_shadow(1.0, LAM, LAM_U, 4.0, &ShadowMoments::UNIT);
        assert!(rel_err(r_sh, r_star) < 1e-14);
        assert!(rel_err(p_th, r_star.powf(-4.0)) < 1e-14);

        let m = shadow_moments(
            &ShadowingModel::Lognormal { mu_db: 0.0, sigma_db: 8.0 },
            4.0,
        );
        let (r_sh, p_th) = threshold_opt_shadow(1.0, LAM, LAM_U, 4.0, &m);
        assert!(rel_err(r_sh, 115.561_966_927_386_76) < 1e-13);
        assert!(rel_err(p_th, 1.309_645_980_093_091_7e-8) < 1e-13);
        // p_th is the reciprocal of t = r_sh^beta / m_2beta^(beta/2)
        let t = r_sh.powf(4.0) / m.m_2beta.powf(2.0);
        assert!(rel_err(p_th, 1.0 / t) < 1e-13);
    }

    #[test]
    fn intensity_measure_values() {
        assert_eq!(intensity_measure(0.0, LAM, 4.0, &ShadowMoments::UNIT), 0.0);
        // no shadowing at t = R^beta counts the RRHs inside radius R
        let r: f64 = 350.0;
        assert!(rel_err(
            intensity_measure(r.powf(4.0), LAM, 4.0, &ShadowMoments::UNIT),
            LAM * PI * r * r
        ) < 1e-14);
        let m = shadow_moments(
            &ShadowingModel::Lognormal { mu_db: 0.0, sigma_db: 8.0 },
            4.0,
        );
        assert!(rel_err(intensity_measure(1e8, LAM, 4.0, &m), 1.528_293_645_779_848) < 1e-13);
    }

    #[test]
    fn multi_threshold_values() {
        let base = threshold_opt_approx(1.0, LAM, LAM_U, 4.0);
        assert!(rel_err(threshold_opt_multi(1, 1.0, LAM, LAM_U, 4.0), base) < 1e-15);
        let ratio = threshold_opt_multi(4, 1.0, LAM, LAM_U, 4.0) / base;
        assert!(rel_err(ratio, 1.189_207_115_002_721) < 1e-13);
        let mut prev = 0.0;
        for l in 1..=8 {
            let r = threshold_opt_multi(l, 1.0, LAM, LAM_U, 4.0);
            assert!(r >= prev);
            prev = r;
        }
    }

    /// Denser RRHs concentrate the coverage peak onto a narrower absolute
    /// band of thresholds (the shape in R/R* depends only on
    /// sqrt(lambda/lambda_u), which also shrinks R* itself).
    #[test]
    fn peak_width_shrinks_with_density() {
        let width_90 = |lambda: f64| {
            let r_star = threshold_opt_approx(1.0, lambda, LAM_U, 4.0);
            let p = |r_th: f64| {
                sir_ccdf_exact(&CoverageInputs {
                    r_th,
                    theta: 1.0,
                    lambda_rrh: lambda,
                    lambda_user: LAM_U,
                    beta: 4.0,
                })
            };
            let p_star = p(r_star);
            let (mut lo, mut hi) = (r_star, r_star);
            while p(lo) > 0.9 * p_star {
                lo /= 1.001;
            }
            while p(hi) > 0.9 * p_star {
                hi *= 1.001;
            }
            hi - lo
        };
        let dense = width_90(1e-3 / PI);
        let sparse = width_90(1e-5 / PI);
        assert!(
            dense < sparse,
            "90%-of-peak width: dense {dense:.1} m vs sparse {sparse:.1} m"
        );
    }

    #[test]
    fn db_round_trip() {
        assert!(rel_err(db_to_linear(0.0), 1.0) < 1e-15);
        assert!(rel_err(db_to_linear(10.0), 10.0) < 1e-14);
        assert!((linear_to_db(db_to_linear(-7.3)) - -7.3).abs() < 1e-12);
    }

    prop_compose! {
        /// Random coverage tuples over wide but numerically tame ranges.
        fn coverage_tuples()(
            log_lambda in -7.0..-2.0f64,
            log_ratio in -2.0..3.0f64,
            log_theta in -1.3..2.0f64,
            beta in 2.5..6.0f64,
            r_scale in -1.0..1.0f64,
        ) -> CoverageInputs {
            let lambda_rrh = 10f64.powf(log_lambda);
            let lambda_user = lambda_rrh / 10f64.powf(log_ratio);
            let theta = 10f64.powf(log_theta);
            let r_star = threshold_opt_approx(theta, lambda_rrh, lambda_user, beta);
            CoverageInputs {
                r_th: r_star * 10f64.powf(r_scale),
                theta,
                lambda_rrh,
                lambda_user,
                beta,
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// e^(-x) <= 1/(1+x) makes the rational form a lower bound everywhere.
        #[test]
        fn approx_is_lower_bound(inputs in coverage_tuples()) {
            prop_assert!(sir_ccdf_approx(&inputs) <= sir_ccdf_exact(&inputs) + 1e-15);
        }

        /// At the optimal threshold, (lambda pi R^2)(c R^2) = 1 exactly.
        #[test]
        fn optimality_product_identity(inputs in coverage_tuples()) {
            let r = threshold_opt_approx(inputs.theta, inputs.lambda_rrh, inputs.lambda_user, inputs.beta);
            let a = inputs.lambda_rrh * PI * r * r;
            let c = interference_scale(inputs.lambda_user, inputs.theta, inputs.beta) * r * r;
            prop_assert!((a * c - 1.0).abs() < 1e-12, "product {}", a * c);
        }

        /// Nearest selection dominates in the analytic model.
        #[test]
        fn loss_no_greater_than_one(inputs in coverage_tuples()) {
            prop_assert!(relative_loss(&inputs) <= 1.0 + 1e-12);
        }

        /// The loss at the optimal threshold collapses to the asymptotic
        /// profile f evaluated at sqrt(lambda/lambda_u sinc(2/beta))/theta^(1/beta).
        #[test]
        fn loss_identity_at_optimum(inputs in coverage_tuples()) {
            let mut at_opt = inputs;
            at_opt.r_th = threshold_opt_approx(inputs.theta, inputs.lambda_rrh, inputs.lambda_user, inputs.beta);
            let x = (inputs.lambda_rrh / inputs.lambda_user).sqrt()
                * sinc_norm(2.0 / inputs.beta).unwrap().sqrt()
                / inputs.theta.powf(1.0 / inputs.beta);
            let lhs = relative_loss(&at_opt);
            let rhs = asymptotic_f(x).unwrap();
            prop_assert!(rel_err(lhs, rhs) < 1e-10, "loss {lhs} vs f({x}) = {rhs}");
        }

        /// f(x) = f(1/x) across six decades.
        #[test]
        fn f_symmetry(log_x in -3.0..3.0f64) {
            let x = 10f64.powf(log_x);
            let a = asymptotic_f(x).unwrap();
            let b = asymptotic_f(1.0 / x).unwrap();
            prop_assert!(rel_err(a, b) < 1e-12);
        }

        /// The optimal threshold is the grid argmax of the approximation.
        #[test]
        fn approx_stationarity(inputs in coverage_tuples()) {
            let r_star = threshold_opt_approx(inputs.theta, inputs.lambda_rrh, inputs.lambda_user, inputs.beta);
            let n = 1200usize;
            let (lo, hi) = ((r_star / 5.0).ln(), (r_star * 5.0).ln());
            let step = (hi - lo) / n as f64;
            let mut best = (f64::MIN, 0usize);
            for i in 0..=n {
                let mut probe = inputs;
                probe.r_th = (lo + step * i as f64).exp();
                let v = sir_ccdf_approx(&probe);
                if v > best.0 {
                    best = (v, i);
                }
            }
            let r_grid = (lo + step * best.1 as f64).exp();
            prop_assert!(
                (r_grid.ln() - r_star.ln()).abs() <= 1.5 * step,
                "grid argmax {r_grid} vs closed form {r_star}"
            );
        }
    }
}
