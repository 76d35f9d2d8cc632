//! Hierarchical proximal policy optimization over the hybrid action space.
//!
//! Each iteration collects fixed-horizon rollouts under the current policy,
//! estimates advantages with GAE, then runs several epochs of minibatch
//! updates on the combined loss: separate clipped surrogates for the
//! discrete and continuous heads, a clipped value loss, and entropy bonuses.
//! Log-probabilities stored at collection time serve as the frozen old
//! policy. Everything is deterministic given the seeds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::envmdp::{
    constrain_action, EnvConfig, EnvError, HighwayEnv, Observation, RewardConfig,
};
use crate::mathf;
use crate::neuralcore::{
    adam_step, build_actor_critic, forward_actor, window_leaves, AdamConfig, GradCheckReport,
    NetError, NetworkSpec, OptimizerState, ParamVec, Tape, Var, FD_EPSILON, KINK_MARGIN,
};
use crate::safetymetrics::ScanParams;
use crate::simworld::HighwayConfig;

const LN_2PI: f64 = 1.8378770664093453;
/// Entropy of a unit-variance Gaussian dimension: ½·ln(2πe).
const HALF_LN_2PI_E: f64 = 1.4189385332046727;

#[derive(Clone, Debug, PartialEq)]
pub enum TrainError {
    LengthMismatch,
    /// A minibatch produced a non-finite loss; the serialized batch is
    /// attached for post-mortem inspection.
    NonFiniteLoss { context: String },
    Env(EnvError),
    Net(NetError),
}

impl fmt::Display for TrainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrainError::LengthMismatch => write!(f, "input arrays have different lengths"),
            TrainError::NonFiniteLoss { .. } => write!(f, "non-finite training loss"),
            TrainError::Env(e) => write!(f, "environment error: {e}"),
            TrainError::Net(e) => write!(f, "network error: {e}"),
        }
    }
}

impl core::error::Error for TrainError {}

impl From<EnvError> for TrainError {
    fn from(e: EnvError) -> Self {
        TrainError::Env(e)
    }
}

impl From<NetError> for TrainError {
    fn from(e: NetError) -> Self {
        TrainError::Net(e)
    }
}

/// Where advantage normalization applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdvNormScope {
    /// Zero mean and unit variance within each minibatch.
    Minibatch,
    /// Zero mean and unit variance over the whole collected batch, so rare
    /// large-magnitude advantages keep their relative weight.
    Batch,
    Off,
}

/// How the continuous log-probability treats the action box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContLogProbMode {
    /// Density of the pre-clip sample (default).
    PreClip,
    /// Truncated-normal density renormalized over the branch box.
    Truncated,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainerConfig {
    pub gamma: f64,
    pub lambda_gae: f64,
    pub clip_epsilon: f64,
    pub value_coeff: f64,
    pub entropy_coeff: f64,
    pub minibatch: usize,
    /// Update epochs per collected batch.
    pub epochs: usize,
    /// Steps collected per environment per iteration.
    pub horizon: usize,
    pub iterations: usize,
    pub num_envs: usize,
    pub normalize_advantages: bool,
    /// Scope of the advantage normalization when enabled.
    pub adv_norm_scope: AdvNormScope,
    pub cont_logprob: ContLogProbMode,
    pub adam: AdamConfig,
    /// Critic optimizer override; the critic regresses on unnormalized
    /// returns, so it often wants a larger rate than the actor.
    pub critic_adam: Option<AdamConfig>,
    /// Optimizer updates after which the learning rate reaches zero;
    /// defaults to the full schedule implied by the other fields.
    pub lr_decay_updates: Option<u64>,
    pub seed: u64,
}

impl Default for TrainerConfig {
    fn default() -> Self {
        TrainerConfig {
            gamma: 0.99,
            lambda_gae: 0.95,
            clip_epsilon: 0.2,
            value_coeff: 0.5,
            entropy_coeff: 0.01,
            minibatch: 4,
            epochs: 4,
            horizon: 2048,
            iterations: 100,
            num_envs: 1,
            normalize_advantages: true,
            adv_norm_scope: AdvNormScope::Minibatch,
            cont_logprob: ContLogProbMode::PreClip,
            adam: AdamConfig::default(),
            critic_adam: None,
            lr_decay_updates: None,
            seed: 0,
        }
    }
}

impl TrainerConfig {
    pub fn is_valid(&self) -> bool {
        self.gamma > 0.0
            && self.gamma <= 1.0
            && (0.0..=1.0).contains(&self.lambda_gae)
            && self.clip_epsilon > 0.0
            && self.minibatch >= 1
            && self.num_envs >= 1
    }

    fn updates_per_iteration(&self) -> u64 {
        let batch = (self.horizon * self.num_envs) as u64;
        let per_epoch = batch.div_ceil(self.minibatch as u64);
        per_epoch * self.epochs as u64
    }

    fn total_updates(&self) -> u64 {
        self.lr_decay_updates
            .unwrap_or(self.updates_per_iteration() * self.iterations as u64)
    }
}

/// Generalized advantage estimation with episode-boundary resets.
///
/// `values[t]` is `V(s_t)`; `bootstrap` stands in for the value after the
/// final step (ignored when that step terminated). Returns advantages and
/// returns with `ret = adv + value`.
pub fn gae_advantages(
    rewards: &[f64],
    values: &[f64],
    dones: &[bool],
    bootstrap: f64,
    gamma: f64,
    lambda: f64,
) -> Result<(Vec<f64>, Vec<f64>), TrainError> {
    let n = rewards.len();
    if values.len() != n || dones.len() != n {
        return Err(TrainError::LengthMismatch);
    }
    let mut adv = alloc::vec![0.0; n];
    let mut ret = alloc::vec![0.0; n];
    let mut carry = 0.0;
    for t in (0..n).rev() {
        let next_value = if dones[t] {
            0.0
        } else if t + 1 == n {
            bootstrap
        } else {
            values[t + 1]
        };
        let delta = rewards[t] + gamma * next_value - values[t];
        carry = delta + gamma * lambda * if dones[t] { 0.0 } else { carry };
        adv[t] = carry;
        ret[t] = carry + values[t];
    }
    Ok((adv, ret))
}

/// Mean clipped surrogate: `mean(min(ρ·Â, clip(ρ, 1−ε, 1+ε)·Â))` with
/// `ρ = exp(logp_new − logp_old)`.
pub fn clipped_policy_objective(
    logp_new: &[f64],
    logp_old: &[f64],
    advantages: &[f64],
    epsilon: f64,
) -> Result<f64, TrainError> {
    let n = logp_new.len();
    if logp_old.len() != n || advantages.len() != n {
        return Err(TrainError::LengthMismatch);
    }
    let mut total = 0.0;
    for i in 0..n {
        let ratio = mathf::exp(logp_new[i] - logp_old[i]);
        let clipped = mathf::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
        total += mathf::min(ratio * advantages[i], clipped * advantages[i]);
    }
    Ok(total / n as f64)
}

/// Mean clipped value loss: `mean(max((R̂−V)², (R̂−V_clip)²))` with
/// `V_clip = V_old + clip(V − V_old, −ε, ε)`.
pub fn clipped_value_loss(
    v_new: &[f64],
    v_old: &[f64],
    returns: &[f64],
    epsilon: f64,
) -> Result<f64, TrainError> {
    let n = v_new.len();
    if v_old.len() != n || returns.len() != n {
        return Err(TrainError::LengthMismatch);
    }
    let mut total = 0.0;
    for i in 0..n {
        let clipped = v_old[i] + mathf::clamp(v_new[i] - v_old[i], -epsilon, epsilon);
        let plain = (returns[i] - v_new[i]) * (returns[i] - v_new[i]);
        let alt = (returns[i] - clipped) * (returns[i] - clipped);
        total += mathf::max(plain, alt);
    }
    Ok(total / n as f64)
}

/// The minimized training loss:
/// `−J_d − J_c + value_coeff·L_BL − entropy_coeff·(H_d + H_c)`.
pub fn total_loss(
    j_d: f64,
    j_c: f64,
    l_bl: f64,
    entropy_d: f64,
    entropy_c: f64,
    value_coeff: f64,
    entropy_coeff: f64,
) -> f64 {
    -j_d - j_c + value_coeff * l_bl - entropy_coeff * (entropy_d + entropy_c)
}

fn log_softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().fold(f64::NEG_INFINITY, |m, &v| mathf::max(m, v));
    let sum: f64 = logits.iter().map(|&v| mathf::exp(v - max)).sum();
    let log_norm = max + mathf::ln(sum);
    logits.iter().map(|&v| v - log_norm).collect()
}

fn normal_logpdf(x: f64, mean: f64, log_std: f64) -> f64 {
    let z = (x - mean) * mathf::exp(-log_std);
    -0.5 * z * z - log_std - 0.5 * LN_2PI
}

/// Samples a branch from the categorical head and the two accelerations
/// from the Gaussian head. Returns the raw (pre-clip) continuous pair and
/// the log-probabilities evaluated at that raw sample.
pub fn sample_hybrid_action(
    logits: &[f64],
    means: &[f64],
    log_stds: &[f64],
    rng: &mut ChaCha8Rng,
) -> (usize, [f64; 2], f64, f64) {
    let lp = log_softmax(logits);
    let u: f64 = rng.gen();
    let mut branch = logits.len() - 1;
    let mut acc = 0.0;
    for (i, l) in lp.iter().enumerate() {
        acc += mathf::exp(*l);
        if u < acc {
            branch = i;
            break;
        }
    }

    // Box-Muller pair for the two action dimensions.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = mathf::sqrt(-2.0 * mathf::ln(u1));
    let z = [
        r * mathf::cos(2.0 * core::f64::consts::PI * u2),
        r * mathf::sin(2.0 * core::f64::consts::PI * u2),
    ];
    let mut cont = [0.0; 2];
    let mut logp_c = 0.0;
    for j in 0..2 {
        cont[j] = means[j] + mathf::exp(log_stds[j]) * z[j];
        logp_c += normal_logpdf(cont[j], means[j], log_stds[j]);
    }
    (branch, cont, lp[branch], logp_c)
}

/// One stored decision step.
#[derive(Clone, Debug)]
pub struct Sample {
    pub window: Vec<Vec<f64>>,
    pub branch: usize,
    pub action_cont: [f64; 2],
    pub reward: f64,
    pub done: bool,
    pub logp_d: f64,
    pub logp_c: f64,
    pub value: f64,
    pub advantage: f64,
    pub ret: f64,
}

/// Per-step records grouped contiguously per environment, plus bootstrap
/// values for unfinished episodes. Advantages and returns are present only
/// after [`RolloutBuffer::estimate_advantages`].
#[derive(Clone, Debug, Default)]
pub struct RolloutBuffer {
    pub samples: Vec<Sample>,
    /// Sample count per environment segment.
    pub segment_len: usize,
    pub bootstraps: Vec<f64>,
    pub estimated: bool,
    /// Returns of episodes that finished during collection.
    pub episode_returns: Vec<f64>,
    /// Mean aggregate risk of those episodes.
    pub episode_adrs: Vec<f64>,
    /// Running partial returns of unfinished episodes (diagnostic fallback).
    pub partial_returns: Vec<f64>,
}

impl RolloutBuffer {
    /// Fills advantages and returns segment by segment.
    pub fn estimate_advantages(&mut self, gamma: f64, lambda: f64) -> Result<(), TrainError> {
        let seg = self.segment_len;
        if seg == 0 || self.samples.len() % seg != 0 {
            return Err(TrainError::LengthMismatch);
        }
        let n_envs = self.samples.len() / seg;
        if self.bootstraps.len() != n_envs {
            return Err(TrainError::LengthMismatch);
        }
        for e in 0..n_envs {
            let range = e * seg..(e + 1) * seg;
            let rewards: Vec<f64> = self.samples[range.clone()].iter().map(|s| s.reward).collect();
            let values: Vec<f64> = self.samples[range.clone()].iter().map(|s| s.value).collect();
            let dones: Vec<bool> = self.samples[range.clone()].iter().map(|s| s.done).collect();
            let (adv, ret) =
                gae_advantages(&rewards, &values, &dones, self.bootstraps[e], gamma, lambda)?;
            for (i, idx) in range.enumerate() {
                self.samples[idx].advantage = adv[i];
                self.samples[idx].ret = ret[i];
            }
        }
        self.estimated = true;
        Ok(())
    }
}

/// Everything needed to build and train on one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainSetup {
    pub highway: HighwayConfig,
    pub env: EnvConfig,
    pub reward: RewardConfig,
    pub scan: ScanParams,
    pub net: NetworkSpec,
    pub trainer: TrainerConfig,
}

impl Default for TrainSetup {
    fn default() -> Self {
        TrainSetup {
            highway: HighwayConfig::default(),
            env: EnvConfig::default(),
            reward: RewardConfig::default(),
            scan: ScanParams::default(),
            net: NetworkSpec::default(),
            trainer: TrainerConfig::default(),
        }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// One environment slot in the rollout fan-out: the live episode, its
/// sliding observation window, and reseed bookkeeping.
pub struct RolloutEnv {
    setup: TrainSetup,
    env: HighwayEnv,
    window: Vec<Vec<f64>>,
    env_index: u64,
    episode_counter: u64,
    episode_return: f64,
    episode_adr_sum: f64,
    episode_steps: u64,
}

impl RolloutEnv {
    fn episode_seed(setup: &TrainSetup, env_index: u64, episode: u64) -> u64 {
        splitmix64(
            setup
                .trainer
                .seed
                .wrapping_add(splitmix64(env_index.wrapping_add(1).wrapping_mul(0x51ab_c0de)))
                .wrapping_add(episode.wrapping_mul(0x9e37_79b9)),
        )
    }

    pub fn new(setup: TrainSetup, env_index: u64) -> Result<Self, EnvError> {
        let seed = Self::episode_seed(&setup, env_index, 0);
        let (env, obs) = HighwayEnv::reset(
            seed,
            setup.highway,
            setup.env,
            setup.reward,
            setup.scan,
        )?;
        Ok(RolloutEnv {
            setup,
            env,
            window: alloc::vec![obs.flatten().to_vec()],
            env_index,
            episode_counter: 0,
            episode_return: 0.0,
            episode_adr_sum: 0.0,
            episode_steps: 0,
        })
    }

    fn push_obs(&mut self, obs: &Observation) {
        self.window.push(obs.flatten().to_vec());
        let cap = self.setup.net.window;
        if self.window.len() > cap {
            self.window.remove(0);
        }
    }

    fn reset_episode(&mut self) -> Result<(), EnvError> {
        self.episode_counter += 1;
        let seed = Self::episode_seed(&self.setup, self.env_index, self.episode_counter);
        let (env, obs) = HighwayEnv::reset(
            seed,
            self.setup.highway,
            self.setup.env,
            self.setup.reward,
            self.setup.scan,
        )?;
        self.env = env;
        self.window = alloc::vec![obs.flatten().to_vec()];
        self.episode_return = 0.0;
        self.episode_adr_sum = 0.0;
        self.episode_steps = 0;
        Ok(())
    }

    pub fn env(&self) -> &HighwayEnv {
        &self.env
    }
}

/// Truncated-normal correction: subtracts the log-mass of the branch box.
fn truncation_correction(
    branch: usize,
    means: &[f64],
    log_stds: &[f64],
    env: &EnvConfig,
) -> f64 {
    let phi = |x: f64| 0.5 * (1.0 + libm::erf(x / core::f64::consts::SQRT_2));
    let bounds = cont_bounds(branch, env);
    let mut corr = 0.0;
    for j in 0..2 {
        let std = mathf::exp(log_stds[j]);
        let lo = (bounds[j].0 - means[j]) / std;
        let hi = (bounds[j].1 - means[j]) / std;
        corr -= mathf::ln(mathf::max(phi(hi) - phi(lo), 1e-12));
    }
    corr
}

fn cont_bounds(branch: usize, env: &EnvConfig) -> [(f64, f64); 2] {
    let lat = match crate::envmdp::Branch::from_index(branch) {
        crate::envmdp::Branch::LeftChange => (0.0, env.a_lat_max),
        crate::envmdp::Branch::RightChange => (-env.a_lat_max, 0.0),
        crate::envmdp::Branch::Following => (-env.a_keep, env.a_keep),
    };
    [(-env.a_long_max, env.a_long_max), lat]
}

/// Runs the policy for `horizon` steps in every environment, recording all
/// per-step quantities. Windows and LSTM context carry across steps within
/// an episode through the stored observation windows, and reset at episode
/// boundaries.
pub fn collect_rollout(
    envs: &mut [RolloutEnv],
    params: &ParamVec,
    cfg: &TrainerConfig,
    sample_rng: &mut ChaCha8Rng,
) -> Result<RolloutBuffer, TrainError> {
    let horizon = cfg.horizon;
    let mut per_env: Vec<Vec<Sample>> = (0..envs.len()).map(|_| Vec::with_capacity(horizon)).collect();
    let mut episode_returns = Vec::new();
    let mut episode_adrs = Vec::new();

    for _ in 0..horizon {
        for (ei, slot) in envs.iter_mut().enumerate() {
            let out = forward_actor(params, &slot.window)?;
            let (branch, cont, logp_d, mut logp_c) =
                sample_hybrid_action(&out.logits, &out.means, &out.log_stds, sample_rng);
            if cfg.cont_logprob == ContLogProbMode::Truncated {
                logp_c += truncation_correction(branch, &out.means, &out.log_stds, &slot.setup.env);
            }
            let action = constrain_action(
                crate::envmdp::Branch::from_index(branch),
                cont[0],
                cont[1],
                &slot.setup.env,
            );
            let window_snapshot = slot.window.clone();
            let result = slot.env.step(&action)?;

            slot.episode_return += result.reward.total;
            slot.episode_adr_sum += result.reward.r_risk;
            slot.episode_steps += 1;

            // A horizon cut is not a terminal state: fold the value of the
            // state beyond the cut into the last reward so advantage
            // estimation bootstraps across it.
            let mut stored_reward = result.reward.total;
            if result.truncated {
                slot.push_obs(&result.observation);
                stored_reward += cfg.gamma * forward_actor(params, &slot.window)?.value;
            }

            per_env[ei].push(Sample {
                window: window_snapshot,
                branch,
                action_cont: cont,
                reward: stored_reward,
                done: result.done,
                logp_d,
                logp_c,
                value: out.value,
                advantage: 0.0,
                ret: 0.0,
            });

            if result.done {
                episode_returns.push(slot.episode_return);
                episode_adrs.push(slot.episode_adr_sum / slot.episode_steps as f64);
                slot.reset_episode()?;
            } else {
                slot.push_obs(&result.observation);
            }
        }
    }

    let mut bootstraps = Vec::with_capacity(envs.len());
    let mut partial_returns = Vec::new();
    for (ei, slot) in envs.iter().enumerate() {
        let last_done = per_env[ei].last().map_or(true, |s| s.done);
        if last_done {
            bootstraps.push(0.0);
        } else {
            bootstraps.push(forward_actor(params, &slot.window)?.value);
        }
        partial_returns.push(slot.episode_return);
    }

    let mut samples = Vec::with_capacity(horizon * envs.len());
    for env_samples in per_env {
        samples.extend(env_samples);
    }
    Ok(RolloutBuffer {
        samples,
        segment_len: horizon,
        bootstraps,
        estimated: false,
        episode_returns,
        episode_adrs,
        partial_returns,
    })
}

/// Tape handles for the minibatch loss and its logged components.
pub(crate) struct LossVars {
    pub loss: Var,
    pub j_d: Var,
    pub j_c: Var,
    pub l_bl: Var,
    pub h_d: Var,
    pub h_c: Var,
}

/// Builds the full minibatch loss graph. Advantages are taken as given
/// (normalize beforehand when configured).
pub(crate) fn build_minibatch_loss(
    tape: &mut Tape,
    params: &ParamVec,
    batch: &[&Sample],
    advantages: &[f64],
    cfg: &TrainerConfig,
    env: &EnvConfig,
) -> Result<LossVars, NetError> {
    let eps = cfg.clip_epsilon;
    let mut terms_d = Vec::with_capacity(batch.len());
    let mut terms_c = Vec::with_capacity(batch.len());
    let mut terms_v = Vec::with_capacity(batch.len());
    let mut ents_d = Vec::with_capacity(batch.len());
    let mut ents_c = Vec::with_capacity(batch.len());

    for (sample, &adv) in batch.iter().zip(advantages) {
        let leaves = window_leaves(tape, params, &sample.window)?;
        let heads = build_actor_critic(tape, params, &leaves)?;

        // Discrete surrogate.
        let log_probs = tape.log_softmax_rows(heads.logits);
        let logp_d = tape.select_entry(log_probs, 0, sample.branch)?;
        let shifted = tape.add_const(logp_d, -sample.logp_d);
        let ratio_d = tape.exp(shifted);
        let plain = tape.scale(ratio_d, adv);
        let clipped = tape.clamp(ratio_d, 1.0 - eps, 1.0 + eps);
        let clipped = tape.scale(clipped, adv);
        terms_d.push(tape.min_elem(plain, clipped)?);

        // Continuous surrogate at the stored raw sample.
        let action = tape.constant(crate::neuralcore::Tensor2D::from_row(
            sample.action_cont.to_vec(),
        ));
        let diff = tape.sub(action, heads.means)?;
        let neg_log_std = tape.neg(heads.log_stds);
        let inv_std = tape.exp(neg_log_std);
        let z = tape.mul(diff, inv_std)?;
        let z2 = tape.mul(z, z)?;
        let mut logp_parts = tape.scale(z2, -0.5);
        logp_parts = tape.add(logp_parts, neg_log_std)?;
        let summed = tape.sum_all(logp_parts);
        let mut logp_c = tape.add_const(summed, -LN_2PI);
        if cfg.cont_logprob == ContLogProbMode::Truncated {
            // The correction depends on means/log_stds; rebuilding it on
            // tape needs the Gaussian CDF. For training we treat the
            // correction as locally constant at its collection-time value,
            // which keeps the ratio exact at epoch start.
            let out_means = tape.value(heads.means).data().to_vec();
            let out_ls = tape.value(heads.log_stds).data().to_vec();
            let corr = truncation_correction(sample.branch, &out_means, &out_ls, env);
            logp_c = tape.add_const(logp_c, corr);
        }
        let shifted_c = tape.add_const(logp_c, -sample.logp_c);
        let ratio_c = tape.exp(shifted_c);
        let plain_c = tape.scale(ratio_c, adv);
        let clipped_c = tape.clamp(ratio_c, 1.0 - eps, 1.0 + eps);
        let clipped_c = tape.scale(clipped_c, adv);
        terms_c.push(tape.min_elem(plain_c, clipped_c)?);

        // Clipped value loss.
        let v_old = tape.scalar_const(sample.value);
        let ret = tape.scalar_const(sample.ret);
        let v_diff = tape.sub(heads.value, v_old)?;
        let v_diff_clipped = tape.clamp(v_diff, -eps, eps);
        let v_clip = tape.add(v_old, v_diff_clipped)?;
        let e1 = tape.sub(ret, heads.value)?;
        let sq1 = tape.mul(e1, e1)?;
        let e2 = tape.sub(ret, v_clip)?;
        let sq2 = tape.mul(e2, e2)?;
        terms_v.push(tape.max_elem(sq1, sq2)?);

        // Entropies.
        let probs = tape.softmax_rows(heads.logits);
        let plp = tape.mul(probs, log_probs)?;
        let neg_h = tape.sum_all(plp);
        ents_d.push(tape.neg(neg_h));
        let ls_sum = tape.sum_all(heads.log_stds);
        ents_c.push(tape.add_const(ls_sum, 2.0 * HALF_LN_2PI_E));
    }

    let mean_of = |tape: &mut Tape, parts: &[Var]| -> Result<Var, NetError> {
        let stacked = tape.concat_rows(parts)?;
        Ok(tape.mean_all(stacked))
    };
    let j_d = mean_of(tape, &terms_d)?;
    let j_c = mean_of(tape, &terms_c)?;
    let l_bl = mean_of(tape, &terms_v)?;
    let h_d = mean_of(tape, &ents_d)?;
    let h_c = mean_of(tape, &ents_c)?;

    let neg_jd = tape.neg(j_d);
    let neg_jc = tape.neg(j_c);
    let value_term = tape.scale(l_bl, cfg.value_coeff);
    let ent_sum = tape.add(h_d, h_c)?;
    let ent_term = tape.scale(ent_sum, -cfg.entropy_coeff);
    let mut loss = tape.add(neg_jd, neg_jc)?;
    loss = tape.add(loss, value_term)?;
    loss = tape.add(loss, ent_term)?;

    Ok(LossVars {
        loss,
        j_d,
        j_c,
        l_bl,
        h_d,
        h_c,
    })
}

/// One learning-curve row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationLog {
    pub iteration: usize,
    pub mean_return: f64,
    pub mean_adr: f64,
    pub loss_total: f64,
    pub loss_value: f64,
    pub entropy_d: f64,
    pub entropy_c: f64,
    pub lr: f64,
    pub episodes_completed: usize,
}

pub struct TrainOutcome {
    pub params: ParamVec,
    pub log: Vec<IterationLog>,
}

fn serialize_minibatch(batch: &[&Sample], advantages: &[f64]) -> String {
    let mut out = String::new();
    for (s, adv) in batch.iter().zip(advantages) {
        let _ = writeln!(
            out,
            "branch={} cont=({},{}) reward={} done={} logp_d={} logp_c={} value={} adv={} ret={}",
            s.branch,
            s.action_cont[0],
            s.action_cont[1],
            s.reward,
            s.done,
            s.logp_d,
            s.logp_c,
            s.value,
            adv,
            s.ret
        );
        for (i, obs) in s.window.iter().enumerate() {
            let _ = writeln!(out, "  obs[{i}]={obs:?}");
        }
    }
    out
}

/// Full training run: M iterations of collect, estimate, and B epochs of
/// minibatch updates. `on_iteration` observes each finished iteration with
/// the current parameters (for checkpointing).
pub fn train(
    setup: &TrainSetup,
    mut on_iteration: impl FnMut(&IterationLog, &ParamVec),
) -> Result<TrainOutcome, TrainError> {
    let cfg = setup.trainer;
    let mut params = ParamVec::init(setup.net, splitmix64(cfg.seed ^ 0xa5a5_5a5a));
    // The actor and critic update as separate parameter sets, each with its
    // own moments and gradient-norm budget.
    let split = params.layout.actor_len();
    let critic_len = params.data.len() - split;
    let mut opt_actor = OptimizerState::new(cfg.adam, split, cfg.total_updates());
    let mut opt_critic = OptimizerState::new(
        cfg.critic_adam.unwrap_or(cfg.adam),
        critic_len,
        cfg.total_updates(),
    );
    let mut sample_rng = ChaCha8Rng::seed_from_u64(splitmix64(cfg.seed ^ 0x0f0f_f0f0));
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(splitmix64(cfg.seed ^ 0x3c3c_c3c3));

    let mut envs: Vec<RolloutEnv> = (0..cfg.num_envs)
        .map(|i| RolloutEnv::new(setup.clone(), i as u64))
        .collect::<Result<_, _>>()?;

    let mut log = Vec::with_capacity(cfg.iterations);
    let mut last_mean_return = 0.0;

    for iteration in 0..cfg.iterations {
        let lr_at_start = opt_actor.effective_lr();
        let mut buffer = collect_rollout(&mut envs, &params, &cfg, &mut sample_rng)?;
        buffer.estimate_advantages(cfg.gamma, cfg.lambda_gae)?;

        let n = buffer.samples.len();
        let mut batch_adv: Vec<f64> = buffer.samples.iter().map(|s| s.advantage).collect();
        if cfg.normalize_advantages && cfg.adv_norm_scope == AdvNormScope::Batch && n > 1 {
            let mean = batch_adv.iter().sum::<f64>() / n as f64;
            let var = batch_adv.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n as f64;
            let std = mathf::max(mathf::sqrt(var), 1e-8);
            for a in &mut batch_adv {
                *a = (*a - mean) / std;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut loss_sum = 0.0;
        let mut value_sum = 0.0;
        let mut ent_d_sum = 0.0;
        let mut ent_c_sum = 0.0;
        let mut batches = 0usize;

        for _ in 0..cfg.epochs {
            // Fisher-Yates with the dedicated shuffle stream.
            for i in (1..n).rev() {
                let j = shuffle_rng.gen_range(0..=i);
                order.swap(i, j);
            }
            for chunk in order.chunks(cfg.minibatch) {
                let batch: Vec<&Sample> = chunk.iter().map(|&i| &buffer.samples[i]).collect();
                let mut advantages: Vec<f64> = chunk.iter().map(|&i| batch_adv[i]).collect();
                if cfg.normalize_advantages
                    && cfg.adv_norm_scope == AdvNormScope::Minibatch
                    && advantages.len() > 1
                {
                    let mean = advantages.iter().sum::<f64>() / advantages.len() as f64;
                    let var = advantages
                        .iter()
                        .map(|a| (a - mean) * (a - mean))
                        .sum::<f64>()
                        / advantages.len() as f64;
                    let std = mathf::max(mathf::sqrt(var), 1e-8);
                    for a in &mut advantages {
                        *a = (*a - mean) / std;
                    }
                }

                let mut tape = Tape::new();
                let vars =
                    build_minibatch_loss(&mut tape, &params, &batch, &advantages, &cfg, &setup.env)?;
                let loss_value = tape.value(vars.loss).scalar();
                if !loss_value.is_finite() {
                    return Err(TrainError::NonFiniteLoss {
                        context: format!(
                            "iteration {iteration}: loss {loss_value}\n{}",
                            serialize_minibatch(&batch, &advantages)
                        ),
                    });
                }
                loss_sum += loss_value;
                value_sum += tape.value(vars.l_bl).scalar();
                ent_d_sum += tape.value(vars.h_d).scalar();
                ent_c_sum += tape.value(vars.h_c).scalar();
                batches += 1;

                let mut grads = alloc::vec![0.0; params.data.len()];
                tape.backward_into(vars.loss, &mut grads)?;
                adam_step(&mut params.data[..split], &grads[..split], &mut opt_actor)?;
                adam_step(&mut params.data[split..], &grads[split..], &mut opt_critic)?;
            }
        }

        let mean_return = if buffer.episode_returns.is_empty() {
            // No episode finished this iteration; fall back to the mean
            // partial return so the curve stays defined.
            if buffer.partial_returns.is_empty() {
                last_mean_return
            } else {
                buffer.partial_returns.iter().sum::<f64>() / buffer.partial_returns.len() as f64
            }
        } else {
            buffer.episode_returns.iter().sum::<f64>() / buffer.episode_returns.len() as f64
        };
        last_mean_return = mean_return;
        let mean_adr = if buffer.episode_adrs.is_empty() {
            0.0
        } else {
            buffer.episode_adrs.iter().sum::<f64>() / buffer.episode_adrs.len() as f64
        };

        let entry = IterationLog {
            iteration,
            mean_return,
            mean_adr,
            loss_total: loss_sum / batches as f64,
            loss_value: value_sum / batches as f64,
            entropy_d: ent_d_sum / batches as f64,
            entropy_c: ent_c_sum / batches as f64,
            lr: lr_at_start,
            episodes_completed: buffer.episode_returns.len(),
        };
        on_iteration(&entry, &params);
        log.push(entry);
    }

    Ok(TrainOutcome { params, log })
}

/// One evaluation episode: the full log plus headline outcomes.
#[derive(Clone, Debug)]
pub struct EpisodeOutcome {
    pub log: crate::safetymetrics::EpisodeLog,
    pub total_reward: f64,
    pub collided: bool,
    pub steps: u64,
}

/// Rolls out `episodes` episodes under the given parameters. Deterministic
/// mode takes the argmax branch and the head means; stochastic mode samples
/// exactly as training does.
pub fn evaluate_policy(
    setup: &TrainSetup,
    params: &ParamVec,
    episodes: usize,
    seed_base: u64,
    stochastic: bool,
) -> Result<Vec<EpisodeOutcome>, TrainError> {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed_base ^ 0x7777_aaaa));
    let mut out = Vec::with_capacity(episodes);
    for ep in 0..episodes {
        let seed = splitmix64(seed_base.wrapping_add(0x1000_0000).wrapping_add(ep as u64));
        let (mut env, obs) = HighwayEnv::reset(
            seed,
            setup.highway,
            setup.env,
            setup.reward,
            setup.scan,
        )?;
        let mut window = alloc::vec![obs.flatten().to_vec()];
        let mut total_reward = 0.0;
        let mut collided = false;
        let mut steps = 0u64;
        loop {
            let head = forward_actor(params, &window)?;
            let (branch, cont) = if stochastic {
                let (b, c, _, _) =
                    sample_hybrid_action(&head.logits, &head.means, &head.log_stds, &mut rng);
                (b, c)
            } else {
                let mut best = 0;
                for (i, l) in head.logits.iter().enumerate() {
                    if *l > head.logits[best] {
                        best = i;
                    }
                }
                (best, [head.means[0], head.means[1]])
            };
            let action = constrain_action(
                crate::envmdp::Branch::from_index(branch),
                cont[0],
                cont[1],
                &setup.env,
            );
            let result = env.step(&action)?;
            total_reward += result.reward.total;
            steps += 1;
            if result.reward.r_collision > 0.0 {
                collided = true;
            }
            if result.done {
                break;
            }
            window.push(result.observation.flatten().to_vec());
            if window.len() > setup.net.window {
                window.remove(0);
            }
        }
        out.push(EpisodeOutcome {
            log: env.log().clone(),
            total_reward,
            collided,
            steps,
        });
    }
    Ok(out)
}

/// Finite-difference check of the full minibatch loss on a reduced network;
/// trials near clip/min/relu kinks are resampled.
pub fn total_loss_gradient_check(trials: usize, seed: u64) -> GradCheckReport {
    use crate::neuralcore::finite_diff_max_rel_err;

    let spec = NetworkSpec {
        obs_dim: 6,
        dense1: 8,
        dense2: 10,
        lstm_hidden: 6,
        attn_dim: 5,
        dense3: 5,
        branches: 3,
        continuous: 2,
        attention: true,
        state_dependent_std: false,
        window: 3,
    };
    let cfg = TrainerConfig::default();
    let env = EnvConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rel = 0.0f64;
    let mut done = 0;
    while done < trials {
        let params = ParamVec::init(spec, rng.gen());
        let mut batch_data = Vec::new();
        for _ in 0..2 {
            let t = rng.gen_range(1..=3);
            let window: Vec<Vec<f64>> = (0..t)
                .map(|_| (0..spec.obs_dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let out = forward_actor(&params, &window).unwrap();
            let (branch, cont, logp_d, logp_c) =
                sample_hybrid_action(&out.logits, &out.means, &out.log_stds, &mut rng);
            batch_data.push(Sample {
                window,
                branch,
                action_cont: cont,
                reward: 0.0,
                done: false,
                // Shift the stored log-probs so the probe also exercises
                // non-unit ratios, as mid-epoch updates do.
                logp_d: logp_d + rng.gen_range(-0.15..0.15),
                logp_c: logp_c + rng.gen_range(-0.15..0.15),
                value: out.value + rng.gen_range(-0.5..0.5),
                advantage: rng.gen_range(-1.0..1.0),
                ret: rng.gen_range(-1.0..1.0),
            });
        }
        let advantages: Vec<f64> = batch_data.iter().map(|s| s.advantage).collect();
        let batch: Vec<&Sample> = batch_data.iter().collect();

        let mut tape = Tape::new();
        let vars = build_minibatch_loss(&mut tape, &params, &batch, &advantages, &cfg, &env).unwrap();
        if tape.kink_margin() < KINK_MARGIN {
            continue;
        }
        let mut analytic = alloc::vec![0.0; params.data.len()];
        tape.backward_into(vars.loss, &mut analytic).unwrap();

        let loss_fn = |flat: &[f64]| -> f64 {
            let mut p = params.clone();
            p.data = flat.to_vec();
            let mut t = Tape::new();
            let v = build_minibatch_loss(&mut t, &p, &batch, &advantages, &cfg, &env).unwrap();
            t.value(v.loss).scalar()
        };
        max_rel = mathf::max(
            max_rel,
            finite_diff_max_rel_err(&params.data, &analytic, loss_fn, FD_EPSILON),
        );
        done += 1;
    }
    GradCheckReport {
        component: String::from("total_loss"),
        trials,
        max_rel_err: max_rel,
    }
}
