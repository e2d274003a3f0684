//! The experiment document: a JSON tree with `system`, `channel`, and
//! `experiment` sections. Missing keys take defaults; unknown keys are
//! rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ToaError};
use crate::model::{ChannelModel, ChannelPreset, SystemConfig, TapStatistics};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub channel: ChannelSection,
    pub experiment: ExperimentSection,
}

/// A preset, optionally with individual fields overridden.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub preset: Option<ChannelPreset>,
    pub p: Option<f64>,
    pub m: Option<f64>,
    pub omega: Option<f64>,
    pub decay_chips: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            snr_db: vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
            trials: 200,
            seed: 1,
        }
    }
}

impl ChannelSection {
    pub fn model(&self) -> Result<ChannelModel> {
        let base = ChannelModel::from_preset(self.preset.unwrap_or(ChannelPreset::Stationary));
        let theta = TapStatistics::new(
            self.p.unwrap_or(base.theta.p),
            self.m.unwrap_or(base.theta.m),
            self.omega.unwrap_or(base.theta.omega),
        )
        .map_err(|e| ToaError::InvalidConfig(format!("channel: {e}")))?;
        let decay_chips = self.decay_chips.or(base.decay_chips);
        if let Some(d) = decay_chips {
            if !(d > 0.0) {
                return Err(ToaError::InvalidConfig(format!(
                    "channel: decay_chips must be > 0, got {d}"
                )));
            }
        }
        Ok(ChannelModel { theta, decay_chips })
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Checks everything a sweep or trial needs.
    pub fn validate(&self) -> Result<()> {
        self.system.validate_for_estimation()?;
        self.channel.model()?;
        if self.experiment.trials == 0 {
            return Err(ToaError::InvalidConfig(
                "experiment.trials must be >= 1".into(),
            ));
        }
        if self.experiment.snr_db.is_empty()
            || self.experiment.snr_db.iter().any(|s| !s.is_finite())
        {
            return Err(ToaError::InvalidConfig(
                "experiment.snr_db must be a nonempty list of finite numbers".into(),
            ));
        }
        Ok(())
    }
}
