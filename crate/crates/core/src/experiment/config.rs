use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::channel::PriorMode;
use crate::codes::CodeSpec;
use crate::decoders::DecoderSpec;
use crate::error::{Error, Result};

/// Only config version understood by this release.
pub const CONFIG_VERSION: u32 = 1;

/// A code entry: an optional id plus the family fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeEntry {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(flatten)]
    pub spec: CodeSpec,
}

impl CodeEntry {
    pub fn id(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.spec.default_id())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderEntry {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(flatten)]
    pub spec: DecoderSpec,
}

impl DecoderEntry {
    pub fn id(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.spec.default_id())
    }
}

/// Prior handed to decoders for non-erased qubits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PriorConfig {
    /// Pure erasure when `p_dep = 0`, otherwise mixed with `p0 = p_dep`.
    #[default]
    Auto,
    PureErasure,
    /// Mixed prior; `p0` defaults to `p_dep`.
    Mixed {
        #[serde(default)]
        p0: Option<f64>,
    },
}

impl PriorConfig {
    pub fn resolve(&self, p_dep: f64) -> PriorMode {
        match *self {
            PriorConfig::Auto if p_dep == 0.0 => PriorMode::PureErasure,
            PriorConfig::Auto => PriorMode::Mixed { p0: p_dep },
            PriorConfig::PureErasure => PriorMode::PureErasure,
            PriorConfig::Mixed { p0 } => PriorMode::Mixed {
                p0: p0.unwrap_or(p_dep),
            },
        }
    }

    pub fn id(&self, p_dep: f64) -> String {
        match self.resolve(p_dep) {
            PriorMode::PureErasure => "pure".into(),
            PriorMode::Mixed { p0 } => format!("mixed{p0}"),
        }
    }
}

/// Pins the erasure set and optionally the error, for worked examples.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    /// Zero-based erased qubits.
    #[serde(default)]
    pub erased: Option<Vec<usize>>,
    /// Pauli string of the error; the erasure defaults to its support.
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    #[default]
    F64,
    F32,
}

/// Reference-curve section: eBDD curves for every length and threshold
/// fraction, over `grid` (or `p_grid` when absent).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CurvesConfig {
    #[serde(default)]
    pub lengths: Vec<u64>,
    #[serde(default)]
    pub thresholds: Vec<f64>,
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    #[serde(default)]
    pub seed: u64,
    pub trials_per_point: u64,
    /// Stop a cell early once this many logical errors are seen.
    #[serde(default)]
    pub target_logical_errors: Option<u64>,
    pub p_grid: Vec<f64>,
    #[serde(default)]
    pub p_dep: f64,
    #[serde(default)]
    pub prior: PriorConfig,
    #[serde(default)]
    pub precision: Precision,
    #[serde(default)]
    pub output: Option<PathBuf>,
    pub codes: Vec<CodeEntry>,
    pub decoders: Vec<DecoderEntry>,
    #[serde(default)]
    pub fixture: Option<Fixture>,
    #[serde(default)]
    pub curves: Option<CurvesConfig>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "config version {} not supported (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("p_grid is empty".into()));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Config(format!("erasure rate {p} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&self.p_dep) {
            return Err(Error::Config(format!(
                "p_dep {} outside [0, 1]",
                self.p_dep
            )));
        }
        if self.codes.is_empty() || self.decoders.is_empty() {
            return Err(Error::Config(
                "at least one code and one decoder are required".into(),
            ));
        }
        if self.target_logical_errors == Some(0) {
            return Err(Error::Config(
                "target_logical_errors must be positive".into(),
            ));
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&json);
        hex::encode(digest.as_slice())[..16].to_string()
    }
}
