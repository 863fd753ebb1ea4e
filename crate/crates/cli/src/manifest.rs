//! Run manifest: what a run wrote, content hashes, and the certificates each
//! stage carries. Wall-clock timings go to a separate unhashed sidecar so
//! that identical configurations reproduce byte-identical manifests.

use std::path::{Path, PathBuf};

use nullseries_core::{Certificate, Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StageRecord {
    pub index: usize,
    /// Partial-sum index the certificates speak about.
    pub n: u64,
    pub eps: f64,
    pub degree: u64,
    /// Exact support measure as a rational string "num/den".
    pub support_measure: String,
    pub coeff_file: String,
    pub support_file: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BlockRecord {
    pub kind: String,
    pub eps: f64,
    /// Partial-sum index of the block's sup certificate, if any.
    pub partial_index: Option<u64>,
    pub coeff_file: String,
    pub support_file: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub config: RunConfig,
    pub config_hash: String,
    /// Every hashed file the run wrote, exactly once.
    pub outputs: Vec<OutputRecord>,
    #[serde(default)]
    pub stages: Vec<StageRecord>,
    #[serde(default)]
    pub blocks: Vec<BlockRecord>,
    /// Diagnostic of the first stage that hit a resource cap, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resource_failure: Option<String>,
    /// Files written but deliberately excluded from hashing (timings).
    pub unhashed_files: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn hash_file(path: &Path) -> Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

pub fn config_hash(config: &RunConfig) -> String {
    sha256_hex(&serde_json::to_vec(config).expect("config serializes"))
}

impl Manifest {
    pub fn new(config: RunConfig) -> Self {
        let config_hash = config_hash(&config);
        Manifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            config_hash,
            outputs: Vec::new(),
            stages: Vec::new(),
            blocks: Vec::new(),
            resource_failure: None,
            unhashed_files: vec!["timings.json".to_string()],
        }
    }

    /// Record a freshly written file by name and content hash.
    pub fn record_output(&mut self, dir: &Path, name: &str) -> Result<()> {
        let hash = hash_file(&dir.join(name))?;
        self.outputs.push(OutputRecord {
            path: name.to_string(),
            sha256: hash,
        });
        Ok(())
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Format(format!("manifest serialization: {e}")))?;
        text.push('\n');
        std::fs::write(&path, text)?;
        Ok(path)
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join("manifest.json");
        let text = std::fs::read_to_string(&path)?;
        serde_json::from_str(&text).map_err(|e| Error::Format(format!("manifest parse: {e}")))
    }
}

/// Wall-clock timings sidecar, written separately from the manifest.
#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Timings {
    pub entries: Vec<(String, f64)>,
}

impl Timings {
    pub fn push(&mut self, label: &str, seconds: f64) {
        self.entries.push((label.to_string(), seconds));
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Format(format!("timings serialization: {e}")))?;
        text.push('\n');
        std::fs::write(dir.join("timings.json"), text)?;
        Ok(())
    }
}
