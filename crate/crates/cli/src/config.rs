//! Run configuration: a small JSON document validated before any computation
//! starts. Unknown keys are rejected so that typos cannot silently change a
//! run.

use nullseries_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    /// Number of construction stages.
    pub stages: u32,
    /// Optional per-stage accuracy overrides for stages 2..; defaults to the
    /// theorem schedule 2^{-k}/n_k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    /// Working precision in bits; 53 selects native doubles.
    #[serde(default = "default_precision")]
    pub precision_bits: u32,
    /// Degree budget for stored stages; stages beyond it abort as a
    /// resource failure.
    #[serde(default = "default_cap")]
    pub degree_cap: u64,
    /// Grid resolution for report plot emission.
    #[serde(default = "default_grid")]
    pub grid: u64,
}

fn default_precision() -> u32 {
    53
}

fn default_cap() -> u64 {
    1 << 26
}

fn default_grid() -> u64 {
    1024
}

impl RunConfig {
    pub fn from_stages(stages: u32, precision_bits: u32) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            stages,
            eps: None,
            precision_bits,
            degree_cap: default_cap(),
            grid: default_grid(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "unsupported config schema version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.stages == 0 {
            return Err(Error::invalid("config schema violation: stages must be >= 1"));
        }
        if let Some(eps) = &self.eps {
            if eps.iter().any(|&e| !(e > 0.0 && e < 0.5)) {
                return Err(Error::invalid(
                    "config schema violation: eps entries must lie in (0, 1/2)",
                ));
            }
        }
        if self.precision_bits < 24 || self.precision_bits > 4096 {
            return Err(Error::invalid(
                "config schema violation: precision_bits must lie in [24, 4096]",
            ));
        }
        if self.degree_cap == 0 || self.grid < 16 || !self.grid.is_power_of_two() {
            return Err(Error::invalid(
                "config schema violation: degree_cap must be positive and grid a power of two >= 16",
            ));
        }
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::invalid(format!("config schema violation: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }
}
