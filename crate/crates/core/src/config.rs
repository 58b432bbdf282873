//! On-disk configuration and deterministic seed derivation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::grid::{CostModel, DatasetKind};
use crate::planners::RrtParams;
use crate::{Error, Result};

/// Derives a component-specific seed from a base seed and a label, so one
/// `--seed` flag controls every random stream without coupling them.
pub fn derive_seed(base: u64, label: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(label.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LlmSettings {
    pub base_url: String,
    pub model: String,
    /// Concurrent in-flight request cap for the remote backend.
    pub concurrency: usize,
    pub timeout_s: u64,
}

impl Default for LlmSettings {
    fn default() -> Self {
        LlmSettings {
            base_url: "https://api.openai.com/v1".into(),
            model: "gpt-4o".into(),
            concurrency: 4,
            timeout_s: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct AppConfig {
    /// Path to a cost model JSON; when absent, the built-in model for
    /// `dataset_kind` applies.
    pub cost_model: Option<PathBuf>,
    pub dataset_kind: DatasetKind,
    pub llm: LlmSettings,
    pub rrt: RrtParams,
}

impl AppConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
        let cfg: AppConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("parsing {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = &self.cost_model {
            if !p.is_file() {
                return Err(Error::Config(format!(
                    "cost model file not found: {}",
                    p.display()
                )));
            }
        }
        if self.llm.concurrency == 0 {
            return Err(Error::Config("llm.concurrency must be at least 1".into()));
        }
        if self.llm.base_url.is_empty() || self.llm.model.is_empty() {
            return Err(Error::Config(
                "llm.base_url and llm.model must be nonempty".into(),
            ));
        }
        Ok(())
    }

    /// The cost model this configuration selects.
    pub fn cost_model(&self) -> Result<CostModel> {
        match &self.cost_model {
            Some(p) => CostModel::from_path(p),
            None => Ok(self.dataset_kind.cost_model()),
        }
    }
}
