//! Two-phase remote-radio-head (RRH) selection for dense cloud radio access
//! networks: closed-form SIR coverage analysis cross-validated by a
//! Monte-Carlo point-process simulator and a model of the selection-switch
//! protocol.
//!
//! The selection algorithm works in two phases. In the distributed phase each
//! RRH compares its distance to the user (or its received power) against a
//! predefined threshold and volunteers for the candidate set. In the random
//! phase the fronthaul switch picks `L` candidates uniformly at random, e.g.
//! by taking the first arrivals of a random-delay race. Neither phase touches
//! every RRH, so the per-user selection cost does not grow with RRH density.
//!
//! Crate layout:
//! - [`geometry`]: Poisson point process sampling, fading/shadowing draws and
//!   the reproducible counter-style RNG streams everything else relies on.
//! - [`analytics`]: closed forms for the SIR CCDF, its rational approximation,
//!   optimal selection thresholds, the nearest-selection baseline, the
//!   relative-loss functional and lognormal shadowing moments.
//! - [`selection`]: both phases of the algorithm plus per-realization SIR
//!   evaluation (single RRH and maximum ratio combining).
//! - [`montecarlo`]: the trial engine producing empirical CCDF curves with
//!   Wilson confidence intervals; deterministic for a given master seed
//!   regardless of worker count.
//! - [`optimizer`]: numeric maximization of the exact CCDF over the selection
//!   threshold, for quantifying the quality of the closed-form threshold.
//! - [`protocol`]: the random-delay switch race and a fronthaul cost
//!   accountant contrasting random with nearest selection.
//! - [`cli`]: experiment configuration, CSV/manifest serialization and the
//!   command entry points behind the `rrh-select` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

// validation paths use `!(v > 0.0)`-style comparisons so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod cli;
mod error;
pub mod geometry;
pub mod montecarlo;
pub mod optimizer;
pub mod protocol;
pub mod selection;
pub mod stats;

pub use error::{Error, Result};
pub use geometry::{NetworkRealization, Point, RngStream, ShadowingModel, SystemParams};
pub use montecarlo::{CcdfCurve, ExperimentConfig, Policy};
