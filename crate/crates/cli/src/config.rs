//! Run configuration: defaults, JSON file loading, and flag overrides.
//!
//! Every run echoes its effective configuration into the output header so a
//! result file is reproducible from itself.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use scs_core::states::CutoffPolicy;
use scs_core::{BaselineSettings, OptimizerSettings, SearchBox};

/// Cutoff selection: the string "auto" or a fixed photon-number cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffSetting {
    Auto,
    Fixed(usize),
}

impl CutoffSetting {
    pub fn to_policy(self) -> CutoffPolicy {
        match self {
            CutoffSetting::Auto => CutoffPolicy::Auto,
            CutoffSetting::Fixed(n) => CutoffPolicy::Fixed(n),
        }
    }
}

impl Serialize for CutoffSetting {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CutoffSetting::Auto => serializer.serialize_str("auto"),
            CutoffSetting::Fixed(n) => serializer.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for CutoffSetting {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CutoffVisitor;
        impl<'de> Visitor<'de> for CutoffVisitor {
            type Value = CutoffSetting;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"auto\" or a nonnegative integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CutoffSetting, E> {
                if v == "auto" {
                    Ok(CutoffSetting::Auto)
                } else {
                    Err(E::custom(format!("unknown cutoff policy {v:?}")))
                }
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<CutoffSetting, E> {
                Ok(CutoffSetting::Fixed(v as usize))
            }
        }
        deserializer.deserialize_any(CutoffVisitor)
    }
}

/// Search box and stopping rules of the two-parameter optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub b_min: f64,
    pub b_max: f64,
    pub s_db_min: f64,
    pub s_db_max: f64,
    pub grid_b: usize,
    pub grid_s: usize,
    pub simplex_tol: f64,
    pub max_simplex_evals: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        let bounds = SearchBox::default();
        let settings = OptimizerSettings::default();
        OptimizerConfig {
            b_min: bounds.b_min,
            b_max: bounds.b_max,
            s_db_min: bounds.s_db_min,
            s_db_max: bounds.s_db_max,
            grid_b: settings.grid_b,
            grid_s: settings.grid_s,
            simplex_tol: settings.simplex_tol,
            max_simplex_evals: settings.max_simplex_evals,
        }
    }
}

impl OptimizerConfig {
    pub fn search_box(&self) -> SearchBox {
        SearchBox {
            b_min: self.b_min,
            b_max: self.b_max,
            s_db_min: self.s_db_min,
            s_db_max: self.s_db_max,
        }
    }

    pub fn settings(&self) -> OptimizerSettings {
        OptimizerSettings {
            grid_b: self.grid_b,
            grid_s: self.grid_s,
            simplex_tol: self.simplex_tol,
            max_simplex_evals: self.max_simplex_evals,
        }
    }
}

/// Vacuum-ancilla baseline configuration. The two squeezing values cover the
/// strong (≫ 10 dB) and moderate (< 10 dB) comparison regimes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BaselineConfig {
    pub s_db_high: f64,
    pub s_db_low: f64,
    pub y2_min: f64,
    pub y2_max: f64,
    pub scan_points: usize,
    pub tol: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        let settings = BaselineSettings::default();
        BaselineConfig {
            s_db_high: 20.0,
            s_db_low: 9.0,
            y2_min: settings.y2_min,
            y2_max: settings.y2_max,
            scan_points: settings.scan_points,
            tol: settings.tol,
        }
    }
}

impl BaselineConfig {
    pub fn settings(&self) -> BaselineSettings {
        BaselineSettings {
            y2_min: self.y2_min,
            y2_max: self.y2_max,
            scan_points: self.scan_points,
            tol: self.tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Effective configuration of a run; serialized into every output header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub cutoff: CutoffSetting,
    /// Squared-amplitude tail threshold used by state constructors. Fixed at
    /// build time; present here so output headers record it.
    pub truncation_tol: f64,
    /// Tolerance the `herald --check` verdict is judged against.
    pub oracle_match_tol: f64,
    pub optimizer: OptimizerConfig,
    pub baseline: BaselineConfig,
    pub format: OutputFormat,
    /// Worker threads; 0 keeps the library default.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cutoff: CutoffSetting::Auto,
            truncation_tol: scs_core::states::TRUNCATION_TOL,
            oracle_match_tol: 1e-9,
            optimizer: OptimizerConfig::default(),
            baseline: BaselineConfig::default(),
            format: OutputFormat::Csv,
            threads: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| format!("cannot parse config {}: {e}", path.display()))?;
        if config.truncation_tol != scs_core::states::TRUNCATION_TOL {
            eprintln!(
                "note: truncation_tol is fixed at {:e} in this build; the configured value {:e} \
                 is recorded but not applied",
                scs_core::states::TRUNCATION_TOL,
                config.truncation_tol
            );
        }
        Ok(config)
    }
}
