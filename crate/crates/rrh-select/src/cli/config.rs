//! Experiment configuration file: one JSON document with optional fields;
//! command-line flags override file fields, and per-command defaults fill
//! the rest. Densities are accepted either as raw points/m^2 numbers or as
//! shorthand strings like `"1e-5/pi"` or `"10^-5/pi"`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::ShadowingModel;

/// A density given as a number or as `A/pi` shorthand text.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DensityValue {
    Number(f64),
    Text(String),
}

impl DensityValue {
    pub fn resolve(&self) -> Result<f64> {
        let v = match self {
            DensityValue::Number(x) => *x,
            DensityValue::Text(s) => parse_density(s)?,
        };
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "density must be finite and >= 0, got {v}"
            )));
        }
        Ok(v)
    }
}

/// Parse `"1e-5"`, `"10^-5"`, `"1e-5/pi"` or `"10^-5/pi"` (π accepted too).
pub fn parse_density(text: &str) -> Result<f64> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (mantissa, over_pi) = match cleaned
        .strip_suffix("/pi")
        .or_else(|| cleaned.strip_suffix("/π"))
    {
        Some(rest) => (rest, true),
        None => (cleaned.as_str(), false),
    };
    let value = if let Some(exponent) = mantissa.strip_prefix("10^") {
        let e: f64 = exponent
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("bad density exponent in {text:?}")))?;
        10f64.powf(e)
    } else {
        mantissa
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("bad density literal {text:?}")))?
    };
    Ok(if over_pi { value / PI } else { value })
}

/// The on-disk configuration document. Every field is optional; commands
/// ignore fields they have no use for.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lambda_rrh: Option<DensityValue>,
    pub lambda_user: Option<DensityValue>,
    pub beta: Option<f64>,
    /// Explicit SIR-target grid in dB; wins over the min/max/step triple.
    pub theta_db: Option<Vec<f64>>,
    pub theta_db_min: Option<f64>,
    pub theta_db_max: Option<f64>,
    pub theta_db_step: Option<f64>,
    /// Selection thresholds in meters (verify) or sweep grid (sweep).
    pub r_th_m: Option<Vec<f64>>,
    /// RRH counts per user for the multi-RRH command.
    pub levels: Option<Vec<u32>>,
    pub shadowing: Option<ShadowingModel>,
    pub n_trials: Option<u64>,
    pub master_seed: Option<u64>,
    /// Overrides the automatic simulation-window rule.
    pub window_radius_m: Option<f64>,
    /// Loss threshold t = 1/p_th probed by the shadow command.
    pub loss_scale_t: Option<f64>,
    pub quantization_bits: Option<u32>,
    pub delay_bound_s: Option<f64>,
    pub density_ratios: Option<Vec<f64>>,
    pub lambda_grid: Option<Vec<DensityValue>>,
    /// Relative tolerance of the numeric threshold search.
    pub opt_tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    /// Parse the JSON document; serde errors carry line/column diagnostics.
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }

    pub fn density(&self, field: &Option<DensityValue>, default: f64) -> Result<f64> {
        match field {
            Some(v) => v.resolve(),
            None => Ok(default),
        }
    }

    pub fn lambda_grid(&self, default: &[f64]) -> Result<Vec<f64>> {
        match &self.lambda_grid {
            Some(values) => values.iter().map(|v| v.resolve()).collect(),
            None => Ok(default.to_vec()),
        }
    }

    /// dB grid from the explicit list or the (min, max, step) triple.
    pub fn theta_db_grid(&self, default_min: f64, default_max: f64, default_step: f64) -> Result<Vec<f64>> {
        if let Some(grid) = &self.theta_db {
            if grid.is_empty() {
                return Err(Error::InvalidConfig("theta_db must not be empty".into()));
            }
            return Ok(grid.clone());
        }
        let min = self.theta_db_min.unwrap_or(default_min);
        let max = self.theta_db_max.unwrap_or(default_max);
        let step = self.theta_db_step.unwrap_or(default_step);
        if !(step > 0.0) || max < min {
            return Err(Error::InvalidConfig(format!(
                "bad theta grid: min {min}, max {max}, step {step}"
            )));
        }
        let n = ((max - min) / step).round() as usize;
        Ok((0..=n).map(|i| min + step * i as f64).collect())
    }
}

/// Resolve the output directory: flag, then config, then
/// `RRH_SELECT_OUT_DIR`, then `./out`.
pub fn resolve_out_dir(flag: Option<PathBuf>, file: Option<&FileConfig>) -> PathBuf {
    flag.or_else(|| file.and_then(|f| f.out_dir.clone()))
        .or_else(|| std::env::var_os("RRH_SELECT_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_shorthand() {
        assert!((parse_density("1e-5/pi").unwrap() - 1e-5 / PI).abs() < 1e-20);
        assert!((parse_density("10^-5/pi").unwrap() - 1e-5 / PI).abs() < 1e-20);
        assert!((parse_density("10^-5").unwrap() - 1e-5).abs() < 1e-20);
        assert!((parse_density("3.2e-4").unwrap() - 3.2e-4).abs() < 1e-18);
        assert!((parse_density(" 1e-5 / pi ").unwrap() - 1e-5 / PI).abs() < 1e-20);
        assert!(parse_density("pi").is_err());
        assert!(parse_density("").is_err());
    }

    #[test]
    fn file_config_round_trip() {
        let doc = r#"{
            "lambda_rrh": "1e-5/pi",
            "lambda_user": 3.18e-7,
            "beta": 4.0,
            "theta_db_min": -10,
            "theta_db_max": 20,
            "theta_db_step": 2,
            "shadowing": { "kind": "lognormal", "sigma_db": 8.0 },
            "n_trials": 1000
        }"#;
        let cfg: FileConfig = serde_json::from_str(doc).unwrap();
        assert!((cfg.lambda_rrh.as_ref().unwrap().resolve().unwrap() - 1e-5 / PI).abs() < 1e-20);
        let grid = cfg.theta_db_grid(0.0, 0.0, 1.0).unwrap();
        assert_eq!(grid.len(), 16);
        assert_eq!(grid[0], -10.0);
        assert_eq!(grid[15], 20.0);
    }

    #[test]
    fn unknown_fields_are_diagnosed() {
        let doc = "{\n  \"lambda_rhh\": 1.0\n}";
        let err = serde_json::from_str::<FileConfig>(doc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "diagnostic should carry a line: {msg}");
    }
}
