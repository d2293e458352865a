//! CSV and manifest serialization. CSV bodies are pure functions of the
//! resolved configuration (UTF-8, fixed header per command, floats at nine
//! significant digits); anything time-dependent lives in the JSON manifest
//! written next to each CSV.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Nine significant digits; missing values serialize as empty fields.
pub fn fmt_f(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.8e}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_f(v),
        None => String::new(),
    }
}

/// Assemble a CSV body from a header and rows of already-formatted cells.
pub fn csv_body(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Everything needed to audit one command invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub artifact_version: String,
    pub master_seed: u64,
    /// Echo of the fully resolved configuration that produced the outputs.
    pub config: serde_json::Value,
    /// Quantities the command derived on the way (auto-chosen simulation
    /// windows, computed thresholds), so runs are auditable without
    /// re-deriving them.
    pub resolved: serde_json::Value,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
    pub bytes: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write `<command>.csv` and `<command>.manifest.json` under `out_dir`.
/// Returns the two paths.
#[allow(clippy::too_many_arguments)]
pub fn write_outputs(
    out_dir: &Path,
    command: &str,
    csv: &str,
    master_seed: u64,
    config: serde_json::Value,
    resolved: serde_json::Value,
    wall_clock_seconds: f64,
) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(format!("{command}.csv"));
    std::fs::write(&csv_path, csv)?;
    let manifest = RunManifest {
        command: command.to_string(),
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed,
        config,
        resolved,
        wall_clock_seconds,
        outputs: vec![OutputDigest {
            file: csv_path.file_name().unwrap().to_string_lossy().into_owned(),
            sha256: sha256_hex(csv.as_bytes()),
            bytes: csv.len() as u64,
        }],
    };
    let manifest_path = out_dir.join(format!("{command}.manifest.json"));
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
    Ok((csv_path, manifest_path))
}

impl From<serde_json::Error> for crate::Error {
    fn from(e: serde_json::Error) -> Self {
        crate::Error::InvalidConfig(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_f(0.7593916674435166), "7.59391667e-1");
        assert_eq!(fmt_f(158.84371319067557), "1.58843713e2");
        assert_eq!(fmt_f(0.0), "0.00000000e0");
        assert_eq!(fmt_f(f64::NAN), "");
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn csv_assembly() {
        let body = csv_body(
            &["a", "b"],
            &[vec!["1".into(), "2".into()], vec!["3".into(), "4".into()]],
        );
        assert_eq!(body, "a,b\n1,2\n3,4\n");
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
