//! Adam with global-norm gradient clipping and linear learning-rate decay.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::NetError;
use crate::mathf;

/// Optimizer hyperparameters exposed to configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamConfig {
    pub base_lr: f64,
    pub clip_norm: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            base_lr: 3e-4,
            clip_norm: 0.1,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Per-parameter moment accumulators plus the decay schedule state.
#[derive(Clone, Debug)]
pub struct OptimizerState {
    pub config: AdamConfig,
    /// Updates after which the effective rate reaches zero.
    pub total_steps: u64,
    pub step: u64,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl OptimizerState {
    pub fn new(config: AdamConfig, n_params: usize, total_steps: u64) -> Self {
        OptimizerState {
            config,
            total_steps,
            step: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }

    /// `base_lr · max(0, 1 − step/total_steps)`: non-increasing, exactly
    /// zero at the end of the schedule.
    pub fn effective_lr(&self) -> f64 {
        let frac = 1.0 - self.step as f64 / self.total_steps as f64;
        self.config.base_lr * mathf::max(0.0, frac)
    }
}

/// Scales `grads` in place so the global norm is at most `clip_norm`;
/// returns the pre-clip norm.
pub fn clip_global_norm(grads: &mut [f64], clip_norm: f64) -> f64 {
    let norm = mathf::sqrt(grads.iter().map(|g| g * g).sum());
    if norm > clip_norm && norm > 0.0 {
        let scale = clip_norm / norm;
        for g in grads.iter_mut() {
            *g *= scale;
        }
    }
    norm
}

/// One update: clip the gradient's global norm, then apply bias-corrected
/// Adam at the linearly decayed rate.
pub fn adam_step(
    params: &mut [f64],
    grads: &[f64],
    opt: &mut OptimizerState,
) -> Result<(), NetError> {
    if params.len() != opt.m.len() || grads.len() != opt.m.len() {
        return Err(NetError::ShapeMismatch);
    }
    let mut clipped = grads.to_vec();
    clip_global_norm(&mut clipped, opt.config.clip_norm);

    let lr = opt.effective_lr();
    let t = (opt.step + 1) as i32;
    let c = opt.config;
    let bias1 = 1.0 - libm::pow(c.beta1, t as f64);
    let bias2 = 1.0 - libm::pow(c.beta2, t as f64);
    for i in 0..params.len() {
        let g = clipped[i];
        opt.m[i] = c.beta1 * opt.m[i] + (1.0 - c.beta1) * g;
        opt.v[i] = c.beta2 * opt.v[i] + (1.0 - c.beta2) * g * g;
        let m_hat = opt.m[i] / bias1;
        let v_hat = opt.v[i] / bias2;
        params[i] -= lr * m_hat / (mathf::sqrt(v_hat) + c.epsilon);
    }
    opt.step += 1;
    Ok(())
}
