//! Point-process sampling and per-link randomness.
//!
//! Everything here is driven by [`RngStream`], a counter-style derivation of
//! independent ChaCha12 generators from `(master_seed, experiment_id,
//! trial_index)`. Trials can therefore run in any order, or in parallel,
//! and still reproduce bit-identical variates.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::{LN_10, PI};

use crate::error::{Error, Result};

/// A planar location in meters. The typical user sits at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    /// Distance to the origin.
    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn distance(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Densities, pathloss and SIR target shared by analysis and simulation.
///
/// Zero densities are admitted so degenerate (empty) worlds can be sampled;
/// the closed-form operations in [`crate::analytics`] require strictly
/// positive densities and validate separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// RRH density, points per square meter.
    pub lambda_rrh: f64,
    /// Interfering-user density, points per square meter.
    pub lambda_user: f64,
    /// Pathloss exponent; must exceed 2 for finite aggregate interference.
    pub beta: f64,
    /// SIR target, linear scale.
    pub theta: f64,
    /// Radius of the simulated disc around the typical user, meters.
    pub window_radius: f64,
}

impl SystemParams {
    pub fn new(
        lambda_rrh: f64,
        lambda_user: f64,
        beta: f64,
        theta: f64,
        window_radius: f64,
    ) -> Result<Self> {
        let p = SystemParams {
            lambda_rrh,
            lambda_user,
            beta,
            theta,
            window_radius,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda_rrh", self.lambda_rrh),
            ("lambda_user", self.lambda_user),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if !(self.beta > 2.0) || !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and > 2 (finite aggregate interference), got {}",
                self.beta
            )));
        }
        if !(self.theta > 0.0) || !self.theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "theta must be finite and > 0, got {}",
                self.theta
            )));
        }
        if !(self.window_radius > 0.0) || !self.window_radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "window_radius must be finite and > 0, got {}",
                self.window_radius
            )));
        }
        Ok(())
    }
}

/// One sampled world: RRH and interferer locations inside the window disc.
/// The typical user is implicit at the origin and never appears among the
/// interferers (Slivnyak conditioning).
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkRealization {
    pub rrh_points: Vec<Point>,
    pub user_points: Vec<Point>,
}

/// Counter-style RNG stream identity.
///
/// Identical `(master_seed, experiment_id, trial_index)` triples derive
/// bit-identical generators; distinct trial indices derive statistically
/// independent streams. Derivation hashes the triple with SHA-256 and seeds
/// ChaCha12 from the digest, so no generator state is shared across trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub master_seed: u64,
    pub experiment_id: String,
    pub trial_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, experiment_id: impl Into<String>, trial_index: u64) -> Self {
        RngStream {
            master_seed,
            experiment_id: experiment_id.into(),
            trial_index,
        }
    }

    /// Same seed and experiment, different trial counter.
    pub fn trial(&self, trial_index: u64) -> Self {
        RngStream {
            master_seed: self.master_seed,
            experiment_id: self.experiment_id.clone(),
            trial_index,
        }
    }

    /// Derive the generator for this stream. Calling twice yields two
    /// generators that produce identical sequences.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut hasher = Sha256::new();
        hasher.update(self.master_seed.to_le_bytes());
        hasher.update((self.experiment_id.len() as u64).to_le_bytes());
        hasher.update(self.experiment_id.as_bytes());
        hasher.update(self.trial_index.to_le_bytes());
        let digest = hasher.finalize();
        ChaCha12Rng::from_seed(digest.into())
    }
}

/// Long-term fading law applied on top of pathloss.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShadowingModel {
    /// S == 1 almost surely.
    None,
    /// S = 10^(X/10) with X ~ Normal(mu_db, sigma_db^2).
    Lognormal {
        #[serde(default)]
        mu_db: f64,
        sigma_db: f64,
    },
}

impl ShadowingModel {
    pub fn is_none(&self) -> bool {
        matches!(self, ShadowingModel::None)
    }

    pub fn validate(&self) -> Result<()> {
        if let ShadowingModel::Lognormal { mu_db, sigma_db } = self {
            if !mu_db.is_finite() || !sigma_db.is_finite() || *sigma_db < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "lognormal shadowing needs finite mu_db and sigma_db >= 0, got mu_db={mu_db} sigma_db={sigma_db}"
                )));
            }
        }
        Ok(())
    }
}

/// Sample a homogeneous PPP of the given density on the disc of
/// `window_radius` around the origin: Poisson count with mean
/// `density * pi * window_radius^2`, then i.i.d. uniform placement.
pub fn sample_ppp<R: Rng + ?Sized>(
    density: f64,
    window_radius: f64,
    rng: &mut R,
) -> Result<Vec<Point>> {
    if !density.is_finite() || density < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "density must be finite and >= 0, got {density}"
        )));
    }
    if !(window_radius > 0.0) || !window_radius.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "window_radius must be finite and > 0, got {window_radius}"
        )));
    }
    let mean = density * PI * window_radius * window_radius;
    if mean == 0.0 {
        return Ok(Vec::new());
    }
    let count = Poisson::new(mean)
        .map_err(|e| Error::InvalidParameter(format!("Poisson mean {mean}: {e}")))?
        .sample(rng) as usize;
    // rejection from the bounding square: exact uniform-disc placement
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let x = 2.0 * rng.gen::<f64>() - 1.0;
        let y = 2.0 * rng.gen::<f64>() - 1.0;
        if x * x + y * y <= 1.0 {
            points.push(Point {
                x: x * window_radius,
                y: y * window_radius,
            });
        }
    }
    Ok(points)
}

/// Sample independent RRH and interfering-user processes in the window disc.
pub fn sample_network(params: &SystemParams, stream: &RngStream) -> Result<NetworkRealization> {
    params.validate()?;
    let mut rng = stream.rng();
    sample_network_with(params, &mut rng)
}

/// Same as [`sample_network`] but drawing from an already-derived generator.
pub fn sample_network_with<R: Rng + ?Sized>(
    params: &SystemParams,
    rng: &mut R,
) -> Result<NetworkRealization> {
    let rrh_points = sample_ppp(params.lambda_rrh, params.window_radius, rng)?;
    let user_points = sample_ppp(params.lambda_user, params.window_radius, rng)?;
    Ok(NetworkRealization {
        rrh_points,
        user_points,
    })
}

/// Draw one Rayleigh fading coefficient h ~ CN(0, 1); |h|^2 is Exp(1).
pub fn draw_fading<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * std::f64::consts::FRAC_1_SQRT_2, im * std::f64::consts::FRAC_1_SQRT_2)
}

/// Draw one shadowing factor on linear power scale.
pub fn draw_shadowing<R: Rng + ?Sized>(model: &ShadowingModel, rng: &mut R) -> f64 {
    match model {
        ShadowingModel::None => 1.0,
        ShadowingModel::Lognormal { mu_db, sigma_db } => {
            let z: f64 = rng.sample(StandardNormal);
            ((mu_db + sigma_db * z) * (LN_10 / 10.0)).exp()
        }
    }
}

/// Default simulation window for a given candidate-scale radius.
///
/// Takes the larger of 30x the candidate reference radius and the radius at
/// which the expected interference truncated beyond the window,
/// `2 pi lambda_u R^(2-beta) / (beta-2)`, drops below 1e-3 of the
/// interference a single user at unit distance would contribute. This keeps
/// the truncation bias well below Monte-Carlo noise.
pub fn default_window_radius(reference_radius: f64, lambda_user: f64, beta: f64) -> f64 {
    let tail = if lambda_user > 0.0 {
        (2.0 * PI * lambda_user / ((beta - 2.0) * 1e-3)).powf(1.0 / (beta - 2.0))
    } else {
        0.0
    };
    (30.0 * reference_radius).max(tail).max(reference_radius)
}
