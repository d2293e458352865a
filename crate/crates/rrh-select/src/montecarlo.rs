//! Trial engine: drives many independent network realizations through
//! selection and SIR evaluation to produce empirical CCDF curves, loss
//! ratios and candidate-count statistics with Wilson confidence intervals.
//!
//! Every trial derives its own [`RngStream`] from `(master_seed,
//! experiment_id, trial_index)` and trials aggregate by index, so results
//! are bit-identical no matter how many worker threads execute them.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, PI};

use crate::analytics::{intensity_measure, shadow_moments};
use crate::error::{Error, Result};
use crate::geometry::{
    default_window_radius, draw_fading, draw_shadowing, sample_ppp, NetworkRealization, RngStream,
    ShadowingModel, SystemParams,
};
use crate::selection::{
    phase1_distance, phase1_power, phase2_random, select_nearest, sir_mrc, CandidateSet,
    SelectedSet,
};
use crate::stats;

/// How the serving RRH(s) are chosen in each realization.
///
/// `l > 1` means the BBU combines the selected branches with maximum ratio
/// combining. `partial` keeps serving with all candidates when fewer than
/// `l` volunteered (instead of declaring outage); it has no effect at
/// `l = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "kebab-case")]
pub enum Policy {
    ThresholdRandom { r_th: f64, l: u32, partial: bool },
    PowerRandom { p_th: f64, l: u32, partial: bool },
    Nearest,
}

impl Policy {
    pub fn descriptor(&self) -> String {
        match self {
            Policy::Nearest => "nearest".to_string(),
            Policy::ThresholdRandom { l: 1, .. } => "threshold-random".to_string(),
            Policy::ThresholdRandom { l, .. } => format!("threshold-random-mrc{l}"),
            Policy::PowerRandom { l: 1, .. } => "power".to_string(),
            Policy::PowerRandom { l, .. } => format!("power-mrc{l}"),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Policy::Nearest => Ok(()),
            Policy::ThresholdRandom { r_th, l, .. } => {
                if !(r_th > 0.0) || !r_th.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "r_th must be finite and > 0, got {r_th}"
                    )));
                }
                if l == 0 {
                    return Err(Error::InvalidConfig("l must be >= 1".into()));
                }
                Ok(())
            }
            Policy::PowerRandom { p_th, l, .. } => {
                if !(p_th > 0.0) || !p_th.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "p_th must be finite and > 0, got {p_th}"
                    )));
                }
                if l == 0 {
                    return Err(Error::InvalidConfig("l must be >= 1".into()));
                }
                Ok(())
            }
        }
    }
}

/// Full description of one Monte-Carlo experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub params: SystemParams,
    pub shadowing: ShadowingModel,
    pub policy: Policy,
    /// SIR targets, linear scale, strictly increasing.
    pub theta_grid: Vec<f64>,
    pub n_trials: u64,
    pub master_seed: u64,
    /// Namespaces the RNG streams; distinct experiments must use distinct ids.
    pub experiment_id: String,
}

impl ExperimentConfig {
    /// Checks everything except the theta grid (candidate-count estimation
    /// has no use for one).
    pub fn validate_base(&self) -> Result<()> {
        self.params.validate()?;
        self.shadowing.validate()?;
        self.policy.validate()?;
        if self.n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be >= 1".into()));
        }
        if let Policy::ThresholdRandom { r_th, .. } = self.policy {
            if r_th > self.params.window_radius {
                return Err(Error::InvalidConfig(format!(
                    "window_radius {} must cover the selection threshold {r_th}",
                    self.params.window_radius
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_base()?;
        if self.theta_grid.is_empty() {
            return Err(Error::InvalidConfig("theta_grid must not be empty".into()));
        }
        for w in self.theta_grid.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidConfig(
                    "theta_grid must be strictly increasing".into(),
                ));
            }
        }
        if self.theta_grid.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(Error::InvalidConfig(
                "theta targets must be finite and > 0 (linear scale)".into(),
            ));
        }
        Ok(())
    }
}

/// Stable stream namespace for a (world, policy) pair. Does not include the
/// theta grid or the trial count, so extending either reuses the same
/// underlying trials.
pub fn derive_experiment_id(
    params: &SystemParams,
    shadowing: &ShadowingModel,
    policy: &Policy,
) -> String {
    let sh = match shadowing {
        ShadowingModel::None => "none".to_string(),
        ShadowingModel::Lognormal { mu_db, sigma_db } => format!("ln({mu_db:e},{sigma_db:e})"),
    };
    let pol = match policy {
        Policy::Nearest => "nearest".to_string(),
        // the partial flag is irrelevant at l = 1; normalize it away so
        // equivalent configs share trials byte-for-byte
        Policy::ThresholdRandom { r_th, l, partial } => {
            format!("thr(r={r_th:e},l={l},p={})", (*l > 1 && *partial) as u8)
        }
        Policy::PowerRandom { p_th, l, partial } => {
            format!("pow(p={p_th:e},l={l},p={})", (*l > 1 && *partial) as u8)
        }
    };
    format!(
        "mc/l={:e}/lu={:e}/b={:e}/w={:e}/{sh}/{pol}",
        params.lambda_rrh, params.lambda_user, params.beta, params.window_radius
    )
}

/// Result of one realization. Outage means no candidate set could be served
/// (distinct from a served realization whose SIR falls below the target).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TrialOutcome {
    Outage,
    Sir(f64),
}

/// Empirical coverage curve with 95% Wilson half-widths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcdfCurve {
    pub theta_grid: Vec<f64>,
    pub estimates: Vec<f64>,
    pub ci_half_width: Vec<f64>,
    pub n_trials: u64,
    pub policy: String,
}

/// Coverage-ratio curve of threshold-random selection over the nearest
/// baseline. Ratios are `None` where the baseline estimate is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LossCurve {
    pub theta_grid: Vec<f64>,
    pub random: CcdfCurve,
    pub nearest: CcdfCurve,
    pub ratio: Vec<Option<f64>>,
    pub ci_half_width: Vec<Option<f64>>,
}

/// Sample mean with a 95% half-width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountStats {
    pub mean: f64,
    pub ci_half_width: f64,
    pub n_trials: u64,
}

/// Radius that needs to be sampled for the RRH process. Points beyond it
/// can neither enter the candidate set nor be selected:
/// - distance threshold: candidates live inside r_th by definition;
/// - power threshold: a candidate needs S ||d||^-beta > p_th, so it lives
///   inside (t S)^(1/beta); six-sigma shadowing headroom bounds the miss
///   probability per trial below ~1e-9;
/// - nearest: the nearest RRH lies beyond sqrt(50/(lambda pi)) with
///   probability e^-50.
fn rrh_sampling_radius(cfg: &ExperimentConfig) -> f64 {
    let w = cfg.params.window_radius;
    match &cfg.policy {
        Policy::ThresholdRandom { r_th, .. } => r_th.min(w),
        Policy::PowerRandom { p_th, .. } => {
            power_capture_radius(1.0 / p_th, &cfg.shadowing, cfg.params.beta).min(w)
        }
        Policy::Nearest => {
            if cfg.params.lambda_rrh > 0.0 {
                (50.0 / (cfg.params.lambda_rrh * PI)).sqrt().min(w)
            } else {
                w
            }
        }
    }
}

/// Radius containing (up to six shadowing sigmas) every RRH whose received
/// power can exceed 1/t.
fn power_capture_radius(t: f64, shadowing: &ShadowingModel, beta: f64) -> f64 {
    let s_hi = match shadowing {
        ShadowingModel::None => 1.0,
        ShadowingModel::Lognormal { mu_db, sigma_db } => {
            ((mu_db + 6.0 * sigma_db) * LN_10 / 10.0).exp()
        }
    };
    (t * s_hi).powf(1.0 / beta)
}

/// Default simulation window for a policy: the geometry rule applied to the
/// policy's own reference radius (selection threshold, power-equivalent
/// radius, or a generous nearest-distance quantile).
pub fn auto_window_radius(
    lambda_rrh: f64,
    lambda_user: f64,
    beta: f64,
    policy: &Policy,
    shadowing: &ShadowingModel,
) -> f64 {
    match policy {
        Policy::ThresholdRandom { r_th, .. } => default_window_radius(*r_th, lambda_user, beta),
        Policy::PowerRandom { p_th, .. } => {
            let t = 1.0 / p_th;
            let m = shadow_moments(shadowing, beta);
            let r_eq = m.m_2beta.sqrt() * t.powf(1.0 / beta);
            default_window_radius(r_eq, lambda_user, beta)
                .max(power_capture_radius(t, shadowing, beta))
        }
        Policy::Nearest => {
            // 2/sqrt(lambda pi) is 4x the mean nearest distance. The
            // selected RRH sits beyond it in e^-4 of trials, but the 30x
            // window margin keeps even those trials' truncated-interference
            // bias orders of magnitude below Monte-Carlo noise.
            let r_ref = if lambda_rrh > 0.0 {
                2.0 / (lambda_rrh * PI).sqrt()
            } else {
                1.0
            };
            default_window_radius(r_ref, lambda_user, beta)
        }
    }
}

fn pick_candidates<R: rand::Rng + ?Sized>(
    cands: &CandidateSet,
    l: u32,
    partial: bool,
    rng: &mut R,
) -> Option<SelectedSet> {
    let l = l as usize;
    let m = cands.len();
    if m == 0 {
        return None;
    }
    if m < l {
        if partial {
            phase2_random(cands, m, rng)
        } else {
            None
        }
    } else {
        phase2_random(cands, l, rng)
    }
}

/// One full realization: sample the world, select, draw link variates,
/// evaluate the SIR. Shadowing (when configured) multiplies link powers;
/// it is folded into the fading amplitude as h * sqrt(S). Under the power
/// policy the serving link reuses the per-RRH shadowing draw that already
/// gated phase 1.
fn run_trial(cfg: &ExperimentConfig, rrh_radius: f64, trial: u64) -> TrialOutcome {
    let mut rng = RngStream::new(cfg.master_seed, cfg.experiment_id.clone(), trial).rng();
    let rrh_points = sample_ppp(cfg.params.lambda_rrh, rrh_radius, &mut rng)
        .expect("validated params cannot fail sampling");
    let user_points = sample_ppp(cfg.params.lambda_user, cfg.params.window_radius, &mut rng)
        .expect("validated params cannot fail sampling");
    let net = NetworkRealization {
        rrh_points,
        user_points,
    };

    let mut rrh_shadows: Option<Vec<f64>> = None;
    let selected: Vec<usize> = match &cfg.policy {
        Policy::Nearest => match select_nearest(&net) {
            Some(s) => vec![s],
            None => return TrialOutcome::Outage,
        },
        Policy::ThresholdRandom { r_th, l, partial } => {
            let cands = phase1_distance(&net, *r_th);
            match pick_candidates(&cands, *l, *partial, &mut rng) {
                Some(sel) => sel.indices,
                None => return TrialOutcome::Outage,
            }
        }
        Policy::PowerRandom { p_th, l, partial } => {
            let shadows: Vec<f64> = (0..net.rrh_points.len())
                .map(|_| draw_shadowing(&cfg.shadowing, &mut rng))
                .collect();
            let cands = phase1_power(&net, &shadows, cfg.params.beta, *p_th);
            rrh_shadows = Some(shadows);
            match pick_candidates(&cands, *l, *partial, &mut rng) {
                Some(sel) => sel.indices,
                None => return TrialOutcome::Outage,
            }
        }
    };

    let shadowed = !cfg.shadowing.is_none();
    let mut h_desired = Vec::with_capacity(selected.len());
    let mut h_interferers: Vec<Vec<Complex64>> = Vec::with_capacity(selected.len());
    for &s in &selected {
        let h = draw_fading(&mut rng);
        h_desired.push(if shadowed {
            let s_link = match &rrh_shadows {
                Some(shadows) => shadows[s],
                None => draw_shadowing(&cfg.shadowing, &mut rng),
            };
            h * s_link.sqrt()
        } else {
            h
        });
        let mut row = Vec::with_capacity(net.user_points.len());
        for _ in 0..net.user_points.len() {
            let h_i = draw_fading(&mut rng);
            row.push(if shadowed {
                h_i * draw_shadowing(&cfg.shadowing, &mut rng).sqrt()
            } else {
                h_i
            });
        }
        h_interferers.push(row);
    }

    TrialOutcome::Sir(sir_mrc(
        &net,
        &selected,
        cfg.params.beta,
        &h_desired,
        &h_interferers,
    ))
}

/// Run every trial of the experiment. Trials execute in parallel but land
/// in a vector indexed by trial, so the output is independent of worker
/// count and scheduling.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialOutcome>> {
    cfg.validate_base()?;
    let rrh_radius = rrh_sampling_radius(cfg);
    Ok((0..cfg.n_trials)
        .into_par_iter()
        .map(|trial| run_trial(cfg, rrh_radius, trial))
        .collect())
}

/// Fraction of outcomes with SIR above `theta`, with its Wilson half-width.
/// Outages count as failures at every target.
pub fn coverage_at(outcomes: &[TrialOutcome], theta: f64) -> (f64, f64) {
    let n = outcomes.len() as u64;
    let covered = outcomes
        .iter()
        .filter(|o| matches!(o, TrialOutcome::Sir(s) if *s > theta))
        .count() as u64;
    (
        covered as f64 / n as f64,
        stats::wilson_half_width(covered, n),
    )
}

/// Build the empirical curve on the configured theta grid from outcomes.
pub fn curve_from_outcomes(cfg: &ExperimentConfig, outcomes: &[TrialOutcome]) -> CcdfCurve {
    let mut estimates = Vec::with_capacity(cfg.theta_grid.len());
    let mut ci = Vec::with_capacity(cfg.theta_grid.len());
    for &theta in &cfg.theta_grid {
        let (p, hw) = coverage_at(outcomes, theta);
        estimates.push(p);
        ci.push(hw);
    }
    CcdfCurve {
        theta_grid: cfg.theta_grid.clone(),
        estimates,
        ci_half_width: ci,
        n_trials: cfg.n_trials,
        policy: cfg.policy.descriptor(),
    }
}

/// Empirical SIR CCDF of the configured policy.
pub fn estimate_ccdf(cfg: &ExperimentConfig) -> Result<CcdfCurve> {
    cfg.validate()?;
    let outcomes = run_trials(cfg)?;
    Ok(curve_from_outcomes(cfg, &outcomes))
}

/// Per-theta ratio of the configured selection policy's coverage to the
/// nearest-selection baseline, with a delta-method confidence interval.
/// The baseline runs on its own independent trial streams.
pub fn estimate_loss(cfg: &ExperimentConfig) -> Result<LossCurve> {
    cfg.validate()?;
    if matches!(cfg.policy, Policy::Nearest) {
        return Err(Error::InvalidConfig(
            "loss estimation compares a threshold policy against nearest selection".into(),
        ));
    }
    let random = estimate_ccdf(cfg)?;
    let mut near_cfg = cfg.clone();
    near_cfg.policy = Policy::Nearest;
    near_cfg.experiment_id = format!("{}#nearest-baseline", cfg.experiment_id);
    let nearest = estimate_ccdf(&near_cfg)?;

    let mut ratio = Vec::with_capacity(cfg.theta_grid.len());
    let mut ci = Vec::with_capacity(cfg.theta_grid.len());
    for i in 0..cfg.theta_grid.len() {
        let (pr, pn) = (random.estimates[i], nearest.estimates[i]);
        if pn == 0.0 {
            ratio.push(None);
            ci.push(None);
            continue;
        }
        let r = pr / pn;
        ratio.push(Some(r));
        // delta method on the independent numerator and denominator
        let hw = if pr > 0.0 {
            r * ((random.ci_half_width[i] / pr).powi(2)
                + (nearest.ci_half_width[i] / pn).powi(2))
            .sqrt()
        } else {
            random.ci_half_width[i] / pn
        };
        ci.push(Some(hw));
    }
    Ok(LossCurve {
        theta_grid: cfg.theta_grid.clone(),
        random,
        nearest,
        ratio,
        ci_half_width: ci,
    })
}

/// Mean candidate-set size under the configured phase-1 criterion.
pub fn estimate_candidate_count(cfg: &ExperimentConfig) -> Result<CountStats> {
    cfg.validate_base()?;
    if matches!(cfg.policy, Policy::Nearest) {
        return Err(Error::InvalidConfig(
            "nearest selection has no phase-1 candidate criterion".into(),
        ));
    }
    let rrh_radius = rrh_sampling_radius(cfg);
    let counts: Vec<f64> = (0..cfg.n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = RngStream::new(cfg.master_seed, cfg.experiment_id.clone(), trial).rng();
            let rrh_points = sample_ppp(cfg.params.lambda_rrh, rrh_radius, &mut rng)
                .expect("validated params cannot fail sampling");
            let net = NetworkRealization {
                rrh_points,
                user_points: Vec::new(),
            };
            match &cfg.policy {
                Policy::ThresholdRandom { r_th, .. } => phase1_distance(&net, *r_th).len() as f64,
                Policy::PowerRandom { p_th, .. } => {
                    let shadows: Vec<f64> = (0..net.rrh_points.len())
                        .map(|_| draw_shadowing(&cfg.shadowing, &mut rng))
                        .collect();
                    phase1_power(&net, &shadows, cfg.params.beta, *p_th).len() as f64
                }
                Policy::Nearest => unreachable!(),
            }
        })
        .collect();
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    Ok(CountStats {
        mean,
        ci_half_width: stats::mean_half_width(&counts),
        n_trials: cfg.n_trials,
    })
}

/// Predicted mean candidate count for a power threshold `p_th`; thin wrapper
/// over the propagation-loss intensity measure at t = 1/p_th.
pub fn predicted_power_count(
    p_th: f64,
    lambda_rrh: f64,
    beta: f64,
    shadowing: &ShadowingModel,
) -> f64 {
    intensity_measure(1.0 / p_th, lambda_rrh, beta, &shadow_moments(shadowing, beta))
}
