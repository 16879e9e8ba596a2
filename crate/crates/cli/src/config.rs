//! Run configuration: a flat JSON object whose keys double as command flags.
//!
//! A manifest is a `RunConfig` with `version` and `command` filled in, so
//! `kickwalk <command> --config manifest.json` replays the run it describes.

use std::f64::consts::PI;
use std::path::Path;

use kickwalk::{
    hadamard_gate, mw_gate, talbot_time, w_gate, y_gate, CoinPosition, Gate, Kick, Protocol, QuasiMomentumEnsemble,
    RatchetSpec, WalkProtocol,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A coin given either by name (`w`, `y`, `h`, `identity`) or as a
/// microwave rotation `M(alpha, chi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoinSpec {
    Named(String),
    Rotation { alpha: f64, chi: f64 },
}

impl CoinSpec {
    /// Parses a flag value: a coin name or `ALPHA,CHI`.
    pub fn parse(field: &str, text: &str) -> CliResult<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [name] => Ok(CoinSpec::Named(name.to_string())),
            [alpha, chi] => {
                let num = |s: &str| s.parse::<f64>().map_err(|e| CliError::config(field, format!("`{s}`: {e}")));
                Ok(CoinSpec::Rotation {
                    alpha: num(alpha)?,
                    chi: num(chi)?,
                })
            }
            _ => Err(CliError::config(field, format!("expected a coin name or ALPHA,CHI, got `{text}`"))),
        }
    }

    fn gate(&self, field: &str) -> CliResult<Gate> {
        match self {
            CoinSpec::Named(name) => match name.to_ascii_lowercase().as_str() {
                "w" => Ok(w_gate()),
                "y" => Ok(y_gate()),
                "h" | "hadamard" | "g_h" => Ok(hadamard_gate()),
                "identity" | "i" => Ok(Gate::identity()),
                _ => Err(CliError::config(field, format!("unknown coin `{name}` (w, y, h, identity)"))),
            },
            CoinSpec::Rotation { alpha, chi } => {
                mw_gate(*alpha, *chi).map_err(|e| CliError::config(field, e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Ratchet width: classes `0..S`.
    S,
    K,
    Fwhm,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::S => "s",
            SweepAxis::K => "k",
            SweepAxis::Fwhm => "fwhm",
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        match text.to_ascii_lowercase().as_str() {
            "s" => Ok(SweepAxis::S),
            "k" => Ok(SweepAxis::K),
            "fwhm" => Ok(SweepAxis::Fwhm),
            other => Err(CliError::config("axis", format!("unknown sweep axis `{other}` (s, k, fwhm)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

fn default_protocol() -> String {
    "swapped".into()
}
fn default_k() -> f64 {
    1.45
}
fn default_tau() -> f64 {
    talbot_time()
}
fn default_steps() -> usize {
    20
}
fn default_classes() -> Vec<i64> {
    vec![0, 1]
}
fn default_n_samples() -> usize {
    1000
}
fn default_seed() -> u64 {
    42
}
fn default_chi() -> f64 {
    PI
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default = "default_protocol")]
    pub protocol: String,
    #[serde(default = "default_k")]
    pub k: f64,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_classes")]
    pub classes: Vec<i64>,
    #[serde(default)]
    pub fwhm: f64,
    #[serde(default = "default_n_samples")]
    pub n_samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub thermal_fraction: f64,
    #[serde(default = "default_chi")]
    pub chi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init_coin: Option<CoinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_coin: Option<CoinSpec>,
    #[serde(default)]
    pub light_shift: bool,
    #[serde(default)]
    pub coin_position: CoinPosition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all keys have defaults")
    }
}

/// Validated inputs of one simulation.
#[derive(Debug, Clone)]
pub struct Plan {
    pub protocol: Protocol,
    pub params: Kick,
    pub spec: RatchetSpec,
    pub ensemble: QuasiMomentumEnsemble,
    pub steps: usize,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::config(json_field(&e.to_string()), e.to_string()))
    }

    pub fn protocol(&self) -> CliResult<Protocol> {
        let custom = self.protocol == "custom";
        if !custom {
            for (field, coin) in [("init_coin", &self.init_coin), ("step_coin", &self.step_coin)] {
                if coin.is_some() {
                    return Err(CliError::config(field, "coins can only be set with protocol `custom`"));
                }
            }
        }
        let protocol = match self.protocol.as_str() {
            "original" => WalkProtocol::original(),
            "swapped" => WalkProtocol::swapped(),
            "lightshift-raw" => WalkProtocol::lightshift_raw(self.chi).map_err(|e| CliError::config("chi", e.to_string()))?,
            "custom" => {
                let coin = |field: &str, spec: &Option<CoinSpec>| -> CliResult<Gate> {
                    spec.as_ref()
                        .ok_or_else(|| CliError::config(field, "required for protocol `custom`"))?
                        .gate(field)
                };
                WalkProtocol::new(coin("init_coin", &self.init_coin)?, coin("step_coin", &self.step_coin)?, false)
            }
            other => {
                return Err(CliError::config(
                    "protocol",
                    format!("unknown protocol `{other}` (original, swapped, lightshift-raw, custom)"),
                ))
            }
        };
        Ok(protocol.with_coin_position(self.coin_position))
    }

    /// Checks every precondition and assembles the simulation inputs.
    pub fn plan(&self) -> CliResult<Plan> {
        let protocol = self.protocol()?;
        let params = Kick::new(self.k, self.tau, self.light_shift)?;
        let spec = RatchetSpec::new(self.classes.clone())?;
        let ensemble = QuasiMomentumEnsemble::new(self.fwhm, self.n_samples, self.seed, self.thermal_fraction)?;
        Ok(Plan {
            protocol,
            params,
            spec,
            ensemble,
            steps: self.steps,
        })
    }

    /// The configuration as recorded next to the artifacts of `command`.
    pub fn manifest(&self, command: &str) -> RunConfig {
        RunConfig {
            version: Some(VERSION.to_string()),
            command: Some(command.to_string()),
            ..self.clone()
        }
    }
}

/// Best-effort field name from a serde_json error message.
fn json_field(message: &str) -> String {
    for marker in ["unknown field `", "missing field `", "field `"] {
        if let Some(rest) = message.split(marker).nth(1) {
            if let Some(name) = rest.split('`').next() {
                return name.to_string();
            }
        }
    }
    "config".to_string()
}
