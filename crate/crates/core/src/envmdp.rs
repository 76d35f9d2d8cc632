//! Sequential decision environment over the highway world.
//!
//! Observations pack six surrounding-vehicle blocks (lead/follow in the left,
//! own, and right lanes) plus the ego block into a 43-dimensional vector.
//! Actions pair a discrete branch (left change / follow / right change) with
//! two continuous accelerations whose lateral range depends on the branch.
//! The reward balances aggregate risk, longitudinal progress, lane centering,
//! and heavily weighted speeding and collision penalties.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::mathf;
use crate::riskfield::{VClass, VehicleState};
use crate::safetymetrics::{self, EpisodeLog, ScanParams, StepRecord, VehicleSnapshot};
use crate::simworld::{
    world_step, Controller, HighwayConfig, StepEvents, VehicleId, WorldState,
};

pub const SV_SLOTS: usize = 6;
pub const OBS_DIM: usize = SV_SLOTS * 6 + 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvError {
    MissingEgo,
    /// No clear slot found for the ego after bounded retries.
    NoFeasibleInsertion,
    /// The episode already reported `done`.
    EpisodeFinished,
}

impl fmt::Display for EnvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvError::MissingEgo => write!(f, "ego vehicle not present in the world"),
            EnvError::NoFeasibleInsertion => {
                write!(f, "no feasible ego insertion slot after bounded retries")
            }
            EnvError::EpisodeFinished => write!(f, "episode already finished"),
        }
    }
}

impl core::error::Error for EnvError {}

/// One surrounding-vehicle block: relative longitudinal/lateral distance and
/// velocity, the neighbor's yaw, and a presence flag. Absent slots are
/// all-zero with `present = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SvBlock {
    pub dd_ver: f64,
    pub dd_lat: f64,
    pub dv_ver: f64,
    pub dv_lat: f64,
    pub yaw: f64,
    pub present: f64,
}

/// Ego block: longitudinal/lateral speed, acceleration, in-lane lateral
/// offset, yaw, and leftmost/rightmost lane flags.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct OvBlock {
    pub v_ver: f64,
    pub v_lat: f64,
    pub accel: f64,
    pub pos_ver: f64,
    pub yaw: f64,
    pub leftmost: f64,
    pub rightmost: f64,
}

/// The full observation: slot order is left-lead, left-follow, same-lead,
/// same-follow, right-lead, right-follow, then the ego block.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Observation {
    pub sv: [SvBlock; SV_SLOTS],
    pub ov: OvBlock,
}

impl Observation {
    pub fn flatten(&self) -> [f64; OBS_DIM] {
        let mut out = [0.0; OBS_DIM];
        for (i, block) in self.sv.iter().enumerate() {
            let base = i * 6;
            out[base] = block.dd_ver;
            out[base + 1] = block.dd_lat;
            out[base + 2] = block.dv_ver;
            out[base + 3] = block.dv_lat;
            out[base + 4] = block.yaw;
            out[base + 5] = block.present;
        }
        let base = SV_SLOTS * 6;
        out[base] = self.ov.v_ver;
        out[base + 1] = self.ov.v_lat;
        out[base + 2] = self.ov.accel;
        out[base + 3] = self.ov.pos_ver;
        out[base + 4] = self.ov.yaw;
        out[base + 5] = self.ov.leftmost;
        out[base + 6] = self.ov.rightmost;
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    LeftChange,
    Following,
    RightChange,
}

impl Branch {
    pub const COUNT: usize = 3;

    pub fn index(self) -> usize {
        match self {
            Branch::LeftChange => 0,
            Branch::Following => 1,
            Branch::RightChange => 2,
        }
    }

    pub fn from_index(i: usize) -> Branch {
        match i {
            0 => Branch::LeftChange,
            1 => Branch::Following,
            _ => Branch::RightChange,
        }
    }
}

/// A discrete branch with its two continuous accelerations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HybridAction {
    pub branch: Branch,
    pub a_vertical: f64,
    pub a_lateral: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiskMode {
    Adr,
    Ttc,
}

/// Reward weights, risk source, and min-max normalization bounds for the
/// three shaped terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardConfig {
    pub w_risk: f64,
    pub w_vertical: f64,
    pub w_position: f64,
    pub w_limit: f64,
    pub w_collision: f64,
    pub risk_mode: RiskMode,
    pub risk_bounds: (f64, f64),
    pub speed_bounds: (f64, f64),
    pub position_bounds: (f64, f64),
    /// TTC scale for the TTC risk mode.
    pub ttc_threshold: f64,
}

impl Default for RewardConfig {
    fn default() -> Self {
        RewardConfig {
            w_risk: 1.0,
            w_vertical: 2.0,
            w_position: 0.5,
            w_limit: 100.0,
            w_collision: 100.0,
            risk_mode: RiskMode::Adr,
            risk_bounds: (0.0, 1.0e7),
            speed_bounds: (0.0, 120.0 / 3.6),
            position_bounds: (0.0, 1.75),
            ttc_threshold: 3.0,
        }
    }
}

/// Raw per-term values plus the composed total. The total is exactly
/// `−w₁·risk + w₂·vertical − w₃·position − w₄·limit − w₅·collision`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RewardBreakdown {
    pub r_risk: f64,
    pub r_vertical: f64,
    pub r_position: f64,
    pub r_limit: f64,
    pub r_collision: f64,
    pub speeding: bool,
    pub total: f64,
}

fn min_max_norm(x: f64, bounds: (f64, f64)) -> f64 {
    let span = bounds.1 - bounds.0;
    if span <= 0.0 {
        return 0.0;
    }
    mathf::clamp((x - bounds.0) / span, 0.0, 1.0)
}

/// Composes the five raw terms into the signed weighted total.
pub fn compose_reward(
    cfg: &RewardConfig,
    r_risk: f64,
    r_vertical: f64,
    r_position: f64,
    r_limit: f64,
    r_collision: f64,
    speeding: bool,
) -> RewardBreakdown {
    let total = -cfg.w_risk * r_risk + cfg.w_vertical * r_vertical - cfg.w_position * r_position
        - cfg.w_limit * r_limit
        - cfg.w_collision * r_collision;
    RewardBreakdown {
        r_risk,
        r_vertical,
        r_position,
        r_limit,
        r_collision,
        speeding,
        total,
    }
}

/// Environment-level parameters: action bounds, episode horizon, perception,
/// and the ego vehicle's fixed attributes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvConfig {
    pub a_long_max: f64,
    pub a_lat_max: f64,
    /// Lateral range while following.
    pub a_keep: f64,
    pub horizon_steps: u32,
    pub perception_range: f64,
    pub ego_mass: f64,
    pub ego_length: f64,
    pub ego_width: f64,
    /// Longitudinal insertion band as fractions of the road length.
    pub insert_band: (f64, f64),
    /// Clear bumper distance required ahead and behind at insertion.
    pub insert_gap: f64,
    pub insert_retries: u32,
}

impl Default for EnvConfig {
    fn default() -> Self {
        EnvConfig {
            a_long_max: 3.0,
            a_lat_max: 2.0,
            a_keep: 0.5,
            horizon_steps: 600,
            perception_range: 50.0,
            ego_mass: 1500.0,
            ego_length: 4.5,
            ego_width: 1.8,
            insert_band: (0.05, 0.3),
            insert_gap: 30.0,
            insert_retries: 200,
        }
    }
}

/// Clips a raw sample into the branch-dependent action box. Left changes
/// steer left-positive, right changes right-negative, and following allows
/// only small corrections. Idempotent.
pub fn constrain_action(
    branch: Branch,
    a_v_sample: f64,
    a_l_sample: f64,
    cfg: &EnvConfig,
) -> HybridAction {
    let a_vertical = mathf::clamp(a_v_sample, -cfg.a_long_max, cfg.a_long_max);
    let a_lateral = match branch {
        Branch::LeftChange => mathf::clamp(a_l_sample, 0.0, cfg.a_lat_max),
        Branch::RightChange => mathf::clamp(a_l_sample, -cfg.a_lat_max, 0.0),
        Branch::Following => mathf::clamp(a_l_sample, -cfg.a_keep, cfg.a_keep),
    };
    HybridAction {
        branch,
        a_vertical,
        a_lateral,
    }
}

fn snapshot_world(world: &WorldState) -> Vec<VehicleSnapshot> {
    world
        .vehicles()
        .iter()
        .map(|r| VehicleSnapshot {
            id: r.id,
            state: r.state,
            lane: r.lane,
        })
        .collect()
}

/// Builds the ego observation from the live world.
pub fn build_observation(
    world: &WorldState,
    ego_id: VehicleId,
    highway: &HighwayConfig,
    env: &EnvConfig,
) -> Result<Observation, EnvError> {
    let ego = world.vehicle(ego_id).ok_or(EnvError::MissingEgo)?;
    let ego_state = ego.state;
    let (evx, evy) = ego_state.velocity();

    let mut obs = Observation::default();
    // Slot order: left (lane + 1), same, right (lane − 1); lead then follow.
    let lanes = [
        (ego.lane + 1 < highway.lane_count).then(|| ego.lane + 1),
        Some(ego.lane),
        ego.lane.checked_sub(1),
    ];
    for (li, lane) in lanes.into_iter().enumerate() {
        let Some(lane) = lane else { continue };
        let (lead, follow) = world.lane_neighbors(lane, ego_state.position_x, Some(ego_id));
        for (si, neighbor) in [(li * 2, lead), (li * 2 + 1, follow)] {
            let Some(rec) = neighbor else { continue };
            let dx = rec.state.position_x - ego_state.position_x;
            if mathf::abs(dx) > env.perception_range {
                continue;
            }
            let (vx, vy) = rec.state.velocity();
            obs.sv[si] = SvBlock {
                dd_ver: dx / env.perception_range,
                dd_lat: (rec.state.position_y - ego_state.position_y) / env.perception_range,
                dv_ver: (vx - evx) / highway.speed_limit,
                dv_lat: (vy - evy) / highway.speed_limit,
                yaw: rec.state.heading,
                present: 1.0,
            };
        }
    }

    let lane_center = highway.lane_center(ego.lane);
    obs.ov = OvBlock {
        v_ver: evx / highway.speed_limit,
        v_lat: evy / highway.speed_limit,
        accel: ego_state.acceleration / env.a_long_max,
        pos_ver: mathf::abs(ego_state.position_y - lane_center) / (highway.lane_width / 2.0),
        yaw: ego_state.heading,
        leftmost: if ego.lane == highway.lane_count - 1 { 1.0 } else { 0.0 },
        rightmost: if ego.lane == 0 { 1.0 } else { 0.0 },
    };
    Ok(obs)
}

/// Computes the reward for the ego given whether this step collided.
pub fn compute_reward(
    world: &WorldState,
    ego_id: VehicleId,
    collided: bool,
    highway: &HighwayConfig,
    reward: &RewardConfig,
    scan: &ScanParams,
) -> Result<RewardBreakdown, EnvError> {
    let ego = world.vehicle(ego_id).ok_or(EnvError::MissingEgo)?;
    let ego_state = ego.state;

    let raw_risk = match reward.risk_mode {
        RiskMode::Adr => {
            let record = StepRecord {
                time: world.time(),
                vehicles: snapshot_world(world),
                collisions: Vec::new(),
            };
            let adr = safetymetrics::step_adr(&record, ego_id, scan).unwrap_or(0.0);
            min_max_norm(adr, reward.risk_bounds)
        }
        RiskMode::Ttc => {
            let (lead, _) = world.lane_neighbors(ego.lane, ego_state.position_x, Some(ego_id));
            match lead {
                Some(rec) => match safetymetrics::ttc(&rec.state, &ego_state) {
                    Ok(t) => mathf::clamp(reward.ttc_threshold / t, 0.0, 1.0),
                    Err(_) => 1.0,
                },
                None => 0.0,
            }
        }
    };

    let v_ver = ego_state.speed * mathf::cos(ego_state.heading);
    let r_vertical = min_max_norm(v_ver, reward.speed_bounds);
    let offset = mathf::abs(ego_state.position_y - highway.lane_center(ego.lane));
    let r_position = min_max_norm(offset, reward.position_bounds);

    let speeding = v_ver > highway.speed_limit;
    let r_limit = if speeding {
        v_ver - highway.speed_limit
    } else {
        0.0
    };
    let r_collision = if collided { 1.0 } else { 0.0 };

    Ok(compose_reward(
        reward, raw_risk, r_vertical, r_position, r_limit, r_collision, speeding,
    ))
}

/// Result of one environment step.
#[derive(Clone, Debug)]
pub struct StepResult {
    pub observation: Observation,
    pub reward: RewardBreakdown,
    pub done: bool,
    /// Set when `done` comes only from the step-count horizon rather than a
    /// terminal state; value estimates should bootstrap across it.
    pub truncated: bool,
    pub events: StepEvents,
}

/// A single-ego episode over the highway world, with warm-up and logging.
#[derive(Clone, Debug)]
pub struct HighwayEnv {
    highway: HighwayConfig,
    env: EnvConfig,
    reward: RewardConfig,
    scan: ScanParams,
    world: WorldState,
    ego: VehicleId,
    steps: u32,
    done: bool,
    log: EpisodeLog,
}

impl HighwayEnv {
    /// Builds a fresh world, runs the ambient-only warm-up, inserts the ego
    /// at a random clear slot, and returns the first observation.
    /// Deterministic per seed.
    pub fn reset(
        seed: u64,
        highway: HighwayConfig,
        env: EnvConfig,
        reward: RewardConfig,
        scan: ScanParams,
    ) -> Result<(Self, Observation), EnvError> {
        let mut world = WorldState::new(seed);
        let warm_steps = (highway.warmup / highway.dt + 0.5) as u64;
        for _ in 0..warm_steps {
            world_step(&mut world, &highway, None);
        }

        let band = (
            env.insert_band.0 * highway.length,
            env.insert_band.1 * highway.length,
        );
        let mut ego = None;
        for _ in 0..env.insert_retries {
            let lane = world.rng_mut().gen_range(0..highway.lane_count);
            let x = world.rng_mut().gen_range(band.0..band.1);
            let clear = {
                let (lead, follow) = world.lane_neighbors(lane, x, None);
                let ahead = lead.map_or(f64::INFINITY, |r| {
                    r.state.position_x - r.state.length / 2.0 - (x + env.ego_length / 2.0)
                });
                let behind = follow.map_or(f64::INFINITY, |r| {
                    x - env.ego_length / 2.0 - (r.state.position_x + r.state.length / 2.0)
                });
                ahead >= env.insert_gap && behind >= env.insert_gap
            };
            if clear {
                let state = VehicleState {
                    position_x: x,
                    position_y: highway.lane_center(lane),
                    speed: highway.initial_speed,
                    heading: 0.0,
                    acceleration: 0.0,
                    mass: env.ego_mass,
                    vclass: VClass::Light,
                    length: env.ego_length,
                    width: env.ego_width,
                };
                ego = Some(world.insert_vehicle(state, lane, Controller::Ego));
                break;
            }
        }
        let ego = ego.ok_or(EnvError::NoFeasibleInsertion)?;

        let log = EpisodeLog {
            dt: highway.dt,
            subject: ego,
            steps: alloc::vec![StepRecord {
                time: world.time(),
                vehicles: snapshot_world(&world),
                collisions: Vec::new(),
            }],
        };
        let observation = build_observation(&world, ego, &highway, &env)?;
        Ok((
            HighwayEnv {
                highway,
                env,
                reward,
                scan,
                world,
                ego,
                steps: 0,
                done: false,
                log,
            },
            observation,
        ))
    }

    pub fn ego_id(&self) -> VehicleId {
        self.ego
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn world(&self) -> &WorldState {
        &self.world
    }

    /// The accumulated episode log (reset state plus one record per step).
    pub fn log(&self) -> &EpisodeLog {
        &self.log
    }

    pub fn env_config(&self) -> &EnvConfig {
        &self.env
    }

    /// Applies the (re-constrained) action, advances the world, and reports
    /// the new observation, reward, and termination.
    pub fn step(&mut self, action: &HybridAction) -> Result<StepResult, EnvError> {
        if self.done {
            return Err(EnvError::EpisodeFinished);
        }
        let action = constrain_action(action.branch, action.a_vertical, action.a_lateral, &self.env);
        let events = world_step(
            &mut self.world,
            &self.highway,
            Some((action.a_vertical, action.a_lateral)),
        );
        self.steps += 1;

        let collided = events
            .collisions
            .iter()
            .any(|&(a, b)| a == self.ego || b == self.ego);
        let ego_state = self
            .world
            .vehicle(self.ego)
            .ok_or(EnvError::MissingEgo)?
            .state;
        let road_end = ego_state.position_x >= self.highway.length;
        let timeout = self.steps >= self.env.horizon_steps;
        self.done = collided || road_end || timeout;
        let truncated = timeout && !collided && !road_end;

        self.log.steps.push(StepRecord {
            time: self.world.time(),
            vehicles: snapshot_world(&self.world),
            collisions: events.collisions.clone(),
        });

        let reward = compute_reward(
            &self.world,
            self.ego,
            collided,
            &self.highway,
            &self.reward,
            &self.scan,
        )?;
        let observation = build_observation(&self.world, self.ego, &self.highway, &self.env)?;
        Ok(StepResult {
            observation,
            reward,
            done: self.done,
            truncated,
            events,
        })
    }
}
