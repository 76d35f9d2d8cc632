//! Run configuration: nested TOML sections over the core config types,
//! strict about unknown keys, with every default documented by
//! `--print-config` and resolved values recorded in the run manifest.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use riskway_core::envmdp::{EnvConfig, RewardConfig};
use riskway_core::hppo::{TrainSetup, TrainerConfig};
use riskway_core::neuralcore::NetworkSpec;
use riskway_core::riskfield::RiskFieldParams;
use riskway_core::safetymetrics::{MetricThresholds, ScanParams};
use riskway_core::simworld::HighwayConfig;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub highway: HighwayConfig,
    pub riskfield: RiskFieldParams,
    pub reward: RewardConfig,
    pub env: EnvConfig,
    pub trainer: TrainerConfig,
    pub net: NetworkSpec,
    pub metrics: MetricThresholds,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        anyhow::ensure!(self.highway.is_valid(), "invalid [highway] section");
        anyhow::ensure!(self.riskfield.is_valid(), "invalid [riskfield] section");
        anyhow::ensure!(self.trainer.is_valid(), "invalid [trainer] section");
        Ok(())
    }

    pub fn scan_params(&self) -> ScanParams {
        ScanParams {
            field: self.riskfield,
            thresholds: self.metrics,
            perception_range: self.env.perception_range,
        }
    }

    pub fn train_setup(&self) -> TrainSetup {
        TrainSetup {
            highway: self.highway,
            env: self.env,
            reward: self.reward,
            scan: self.scan_params(),
            net: self.net,
            trainer: self.trainer,
        }
    }

    /// The configuration with every deferred default substituted by its
    /// resolved value, so the dump is total.
    pub fn resolved(&self) -> RunConfig {
        let mut out = self.clone();
        out.riskfield.exp_coeff = Some(self.riskfield.exp_coeff());
        out.trainer.lr_decay_updates = Some(resolved_decay(&self.trainer));
        out
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(&self.resolved()).expect("config serializes")
    }
}

fn resolved_decay(t: &TrainerConfig) -> u64 {
    t.lr_decay_updates.unwrap_or_else(|| {
        let batch = (t.horizon * t.num_envs) as u64;
        batch.div_ceil(t.minibatch as u64) * t.epochs as u64 * t.iterations as u64
    })
}

/// Modelling choices baked into the defaults, recorded in every run
/// manifest so downstream artifacts stay comparable.
pub const MODEL_NOTES: &[&str] = &[
    "ambient vehicles use an IDM longitudinal controller with MOBIL discretionary lane changes",
    "ambient lane changes execute as a 3 s lateral ramp rather than an instantaneous lane switch",
    "vehicle masses are uniform draws from per-class ranges; see [highway.spawn]",
    "simulation step dt defaults to 0.1 s",
    "pseudo-distance exponent coefficient defaults to tau; see [riskfield].exp_coeff",
    "reward normalization bounds and the episode horizon are configuration choices; see [reward] and [env]",
    "continuous log-probabilities default to the pre-clip sample density; see [trainer].cont_logprob",
];

/// Serializes the fully resolved configuration plus the model notes.
pub fn run_manifest(cfg: &RunConfig, seed: u64) -> String {
    let mut out = String::new();
    out.push_str("# Run manifest: resolved configuration and modelling notes.\n");
    out.push_str(&format!("seed = {seed}\n\n"));
    out.push_str(&cfg.to_toml());
    out.push_str("\n[notes]\nmodel_choices = [\n");
    for note in MODEL_NOTES {
        out.push_str(&format!("    \"{note}\",\n"));
    }
    out.push_str("]\n");
    out
}
