//! Experiment configuration: the JSON schema, validation, and the content
//! digest that keys persisted results.
//!
//! The digest covers everything that determines output bytes (driver, drift,
//! grids, p-values, functionals, sample count, seed, tolerance) and excludes
//! the presentation-only `name` and the scheduling hint `workers`, so a
//! renamed or differently-threaded rerun lands in the same result directory
//! and reuses its completed cells.

use crate::analysis::functional::ErrorFunctional;
use crate::error::{Error, Result};
use crate::levy::LevySpec;
use crate::sde::DriftSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

fn default_tolerance() -> f64 {
    0.15
}

/// One experiment: a driver/drift pair measured over an n-ladder for each
/// (functional, p) combination.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub levy: LevySpec,
    pub drift: DriftSpec,
    /// Starting point; omitted means the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    pub n_ladder: Vec<usize>,
    pub n_ref: usize,
    pub p_values: Vec<f64>,
    pub functionals: Vec<ErrorFunctional>,
    #[serde(rename = "M")]
    pub samples: usize,
    pub seed: u64,
    /// Worker-thread hint; never affects output bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    /// Slope slack when comparing the fitted rate with the prediction.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

/// A grid of experiments summarized into one table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub cells: Vec<ExperimentConfig>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.levy.validate()?;
        self.drift.validate()?;
        if self.drift.dim != self.levy.dim {
            return Err(Error::Config(format!(
                "drift dimension {} differs from driver dimension {}",
                self.drift.dim, self.levy.dim
            )));
        }
        if let Some(x0) = &self.x0 {
            if x0.len() != self.levy.dim {
                return Err(Error::Config(format!(
                    "x0 length {} differs from dimension {}",
                    x0.len(),
                    self.levy.dim
                )));
            }
            if x0.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config("x0 must be finite".into()));
            }
        }
        if !self.n_ref.is_power_of_two() {
            return Err(Error::Config(format!(
                "n_ref = {} is not a power of two",
                self.n_ref
            )));
        }
        if self.n_ladder.is_empty() {
            return Err(Error::Config("n_ladder is empty".into()));
        }
        if !self.n_ladder.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("n_ladder must strictly increase".into()));
        }
        for &n in &self.n_ladder {
            if n < 2 || !n.is_power_of_two() {
                return Err(Error::Config(format!(
                    "ladder rung {n} must be a power of two, at least 2"
                )));
            }
            if n > self.n_ref / 8 {
                return Err(Error::Config(format!(
                    "ladder rung {n} exceeds n_ref/8 = {}",
                    self.n_ref / 8
                )));
            }
        }
        if self.p_values.is_empty() {
            return Err(Error::Config("p_values is empty".into()));
        }
        for &p in &self.p_values {
            if !(p >= 1.0) || !p.is_finite() {
                return Err(Error::Config(format!("p = {p} must be finite and >= 1")));
            }
        }
        if self.functionals.is_empty() {
            return Err(Error::Config("functionals is empty".into()));
        }
        for f in &self.functionals {
            f.validate()?;
        }
        if self.samples < 100 {
            return Err(Error::Config(format!(
                "M = {} is below the minimum of 100",
                self.samples
            )));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::Config(format!(
                "tolerance = {} must be finite and positive",
                self.tolerance
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// The starting point with the origin default applied.
    pub fn x0_vec(&self) -> Vec<f64> {
        self.x0
            .clone()
            .unwrap_or_else(|| vec![0.0; self.levy.dim])
    }

    /// A copy with all defaults made explicit and scheduling hints dropped:
    /// the form that is digested and written to disk.
    pub fn resolved(&self) -> ExperimentConfig {
        let mut out = self.clone();
        out.x0 = Some(self.x0_vec());
        out.workers = None;
        out
    }

    /// Hex content digest over the resolved config minus `name`. serde_json
    /// Values order map keys, so the serialization is canonical.
    pub fn digest(&self) -> Result<String> {
        let mut value = serde_json::to_value(self.resolved())?;
        let map = value
            .as_object_mut()
            .expect("config serializes to an object");
        map.remove("name");
        let canonical = serde_json::to_string(&value)?;
        let hash = Sha256::digest(canonical.as_bytes());
        Ok(hash
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>()[..16]
            .to_string())
    }
}
