//! Discrete-time microscopic simulation of a multi-lane highway.
//!
//! Ambient vehicles follow an IDM longitudinal controller with MOBIL
//! discretionary lane changes; lane changes execute as a bounded-duration
//! lateral ramp so downstream risk-field inputs stay continuous. The ego
//! vehicle is driven externally through road-frame accelerations. Stepping
//! order per tick: ambient decisions, kinematics, despawn, spawn, collision
//! scan. Everything is deterministic given the seed, the configuration, and
//! the ego control sequence.

mod collision;
mod idm;
mod kinematics;
mod mobil;

pub use collision::{footprints_overlap, Footprint};
pub use idm::{bumper_gap, idm_acceleration, IdmParams};
pub use kinematics::step_kinematics;
pub use mobil::{mobil_lane_change, LaneChoice, LaneNeighbors, MobilContext, MobilParams};

use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::mathf;
use crate::riskfield::{VClass, VehicleState};

pub type VehicleId = u64;

/// Deceleration applied when a follower finds itself overlapping its leader
/// (post-collision recovery), and the cap on the lateral ramp acceleration.
const EMERGENCY_DECEL: f64 = 6.0;
const RAMP_LAT_ACCEL_CAP: f64 = 4.0;
/// Duration of an ambient lane-change ramp in seconds.
const LANE_CHANGE_SECONDS: f64 = 3.0;

/// Errors from simulation primitives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimError {
    /// Follower and leader footprints already touch or overlap.
    NonPositiveGap,
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::NonPositiveGap => write!(f, "bumper gap is not positive"),
        }
    }
}

impl core::error::Error for SimError {}

/// Per-class spawn attribute ranges. Masses are uniform draws; dimensions
/// are fixed per class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpawnClasses {
    pub light_mass: (f64, f64),
    pub heavy_mass: (f64, f64),
    pub light_length: f64,
    pub light_width: f64,
    pub heavy_length: f64,
    pub heavy_width: f64,
}

impl Default for SpawnClasses {
    fn default() -> Self {
        SpawnClasses {
            light_mass: (1000.0, 2000.0),
            heavy_mass: (10000.0, 40000.0),
            light_length: 4.5,
            light_width: 1.8,
            heavy_length: 12.0,
            heavy_width: 2.5,
        }
    }
}

/// Highway scenario parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HighwayConfig {
    /// Road length in meters.
    pub length: f64,
    pub lane_count: usize,
    pub lane_width: f64,
    /// Speed limit in m/s.
    pub speed_limit: f64,
    /// Probability that a spawned vehicle is heavy.
    pub heavy_fraction: f64,
    /// Mean arrivals per second (Poisson).
    pub arrival_rate: f64,
    /// Ambient-only stabilization period in seconds.
    pub warmup: f64,
    /// Spawn speed for all vehicles in m/s.
    pub initial_speed: f64,
    /// Simulation step in seconds.
    pub dt: f64,
    pub idm: IdmParams,
    pub mobil: MobilParams,
    pub spawn: SpawnClasses,
}

impl Default for HighwayConfig {
    fn default() -> Self {
        HighwayConfig {
            length: 2800.0,
            lane_count: 3,
            lane_width: 3.5,
            speed_limit: 120.0 / 3.6,
            heavy_fraction: 0.25,
            arrival_rate: 1.2,
            warmup: 115.0,
            initial_speed: 20.0,
            dt: 0.1,
            idm: IdmParams::default(),
            mobil: MobilParams::default(),
            spawn: SpawnClasses::default(),
        }
    }
}

impl HighwayConfig {
    pub fn lane_center(&self, lane: usize) -> f64 {
        (lane as f64 + 0.5) * self.lane_width
    }

    /// Lane index containing a lateral position, clamped to the road.
    pub fn lane_of(&self, y: f64) -> usize {
        let raw = mathf::floor(y / self.lane_width);
        if raw < 0.0 {
            0
        } else {
            (raw as usize).min(self.lane_count - 1)
        }
    }

    pub fn road_width(&self) -> f64 {
        self.lane_count as f64 * self.lane_width
    }

    pub fn is_valid(&self) -> bool {
        self.lane_count >= 2
            && self.dt > 0.0
            && (0.0..=1.0).contains(&self.heavy_fraction)
            && self.arrival_rate >= 0.0
            && self.length > 0.0
            && self.lane_width > 0.0
    }

    fn ramp_steps(&self) -> u32 {
        let steps = LANE_CHANGE_SECONDS / self.dt;
        let n = mathf::floor(steps) as u32;
        if (n as f64) < steps {
            n + 1
        } else {
            n.max(1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Controller {
    Ego,
    Ambient,
}

/// In-progress lane change of an ambient vehicle.
#[derive(Clone, Copy, Debug)]
pub struct LaneChange {
    pub from: usize,
    pub to: usize,
    pub steps_left: u32,
}

#[derive(Clone, Debug)]
pub struct VehicleRecord {
    pub id: VehicleId,
    pub state: VehicleState,
    pub lane: usize,
    pub controller: Controller,
    pub maneuver: Option<LaneChange>,
}

impl VehicleRecord {
    /// A vehicle mid-change occupies both the origin and target lanes.
    pub fn occupies(&self, lane: usize) -> bool {
        match &self.maneuver {
            Some(m) => m.from == lane || m.to == lane,
            None => self.lane == lane,
        }
    }
}

/// Events produced by one world step, in deterministic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepEvents {
    pub collisions: Vec<(VehicleId, VehicleId)>,
    pub despawned: Vec<VehicleId>,
    pub spawned: Vec<VehicleId>,
    pub lane_changes_completed: Vec<VehicleId>,
}

/// Full mutable simulation state; owns its RNG.
#[derive(Clone, Debug)]
pub struct WorldState {
    time: f64,
    vehicles: Vec<VehicleRecord>,
    rng: ChaCha8Rng,
    next_id: VehicleId,
    pending_spawns: u32,
}

impl WorldState {
    pub fn new(seed: u64) -> Self {
        WorldState {
            time: 0.0,
            vehicles: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            next_id: 0,
            pending_spawns: 0,
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn vehicles(&self) -> &[VehicleRecord] {
        &self.vehicles
    }

    pub fn vehicle(&self, id: VehicleId) -> Option<&VehicleRecord> {
        self.vehicles.iter().find(|v| v.id == id)
    }

    pub(crate) fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn insert_vehicle(
        &mut self,
        state: VehicleState,
        lane: usize,
        controller: Controller,
    ) -> VehicleId {
        let id = self.next_id;
        self.next_id += 1;
        self.vehicles.push(VehicleRecord {
            id,
            state,
            lane,
            controller,
            maneuver: None,
        });
        id
    }

    /// Nearest leader and follower around `x` occupying `lane`, excluding
    /// `exclude`. Ties on position break by id.
    pub fn lane_neighbors(
        &self,
        lane: usize,
        x: f64,
        exclude: Option<VehicleId>,
    ) -> (Option<&VehicleRecord>, Option<&VehicleRecord>) {
        let mut lead: Option<&VehicleRecord> = None;
        let mut follow: Option<&VehicleRecord> = None;
        for rec in &self.vehicles {
            if Some(rec.id) == exclude || !rec.occupies(lane) {
                continue;
            }
            let vx = rec.state.position_x;
            if vx > x {
                if lead.map_or(true, |l| (vx, rec.id) < (l.state.position_x, l.id)) {
                    lead = Some(rec);
                }
            } else if follow.map_or(true, |f| (vx, rec.id) > (f.state.position_x, f.id)) {
                follow = Some(rec);
            }
        }
        (lead, follow)
    }

    fn mobil_context(&self, rec: &VehicleRecord, cfg: &HighwayConfig) -> MobilContext {
        let slots = |lane: usize| -> LaneNeighbors {
            let (lead, follow) = self.lane_neighbors(lane, rec.state.position_x, Some(rec.id));
            LaneNeighbors {
                lead: lead.map(|r| r.state),
                follow: follow.map(|r| r.state),
            }
        };
        MobilContext {
            current: slots(rec.lane),
            left: (rec.lane + 1 < cfg.lane_count).then(|| slots(rec.lane + 1)),
            right: (rec.lane > 0).then(|| slots(rec.lane - 1)),
        }
    }

    /// IDM acceleration against the nearest leader in every occupied lane;
    /// an overlapping leader forces emergency braking.
    fn ambient_accel(&self, rec: &VehicleRecord, cfg: &HighwayConfig) -> f64 {
        let mut lanes = [rec.lane, rec.lane];
        if let Some(m) = &rec.maneuver {
            lanes = [m.from, m.to];
        }
        let mut accel = f64::INFINITY;
        let mut seen = false;
        for (i, &lane) in lanes.iter().enumerate() {
            if i == 1 && lanes[0] == lanes[1] {
                break;
            }
            let (lead, _) = self.lane_neighbors(lane, rec.state.position_x, Some(rec.id));
            let a = match idm_acceleration(&rec.state, lead.map(|r| &r.state), &cfg.idm) {
                Ok(a) => a,
                Err(SimError::NonPositiveGap) => -EMERGENCY_DECEL,
            };
            accel = mathf::min(accel, a);
            seen = true;
        }
        debug_assert!(seen);
        accel
    }
}

fn draw_poisson(rng: &mut ChaCha8Rng, lambda: f64) -> u32 {
    if lambda <= 0.0 {
        return 0;
    }
    let floor = mathf::exp(-lambda);
    let mut k = 0u32;
    let mut p = 1.0f64;
    loop {
        p *= rng.gen::<f64>();
        if p <= floor {
            return k;
        }
        k += 1;
    }
}

fn draw_spawn_state(rng: &mut ChaCha8Rng, cfg: &HighwayConfig, y: f64) -> VehicleState {
    let heavy = rng.gen::<f64>() < cfg.heavy_fraction;
    let (mass_range, length, width, vclass) = if heavy {
        (
            cfg.spawn.heavy_mass,
            cfg.spawn.heavy_length,
            cfg.spawn.heavy_width,
            VClass::Heavy,
        )
    } else {
        (
            cfg.spawn.light_mass,
            cfg.spawn.light_length,
            cfg.spawn.light_width,
            VClass::Light,
        )
    };
    let mass = rng.gen_range(mass_range.0..mass_range.1);
    VehicleState {
        position_x: length / 2.0,
        position_y: y,
        speed: cfg.initial_speed,
        heading: 0.0,
        acceleration: 0.0,
        mass,
        vclass,
        length,
        width,
    }
}

/// Draws this step's Poisson arrivals and places them at the road entry.
/// A blocked arrival stays pending and redraws its lane next step, so
/// vehicles are never stacked on top of each other.
pub fn spawn_vehicles(world: &mut WorldState, cfg: &HighwayConfig) -> Vec<VehicleId> {
    world.pending_spawns += draw_poisson(&mut world.rng, cfg.arrival_rate * cfg.dt);
    let entry_gap = cfg.idm.s0 + cfg.initial_speed * cfg.idm.t_headway;
    let mut spawned = Vec::new();
    let attempts = world.pending_spawns;
    for _ in 0..attempts {
        let lane = world.rng.gen_range(0..cfg.lane_count);
        // Nearest downstream rear bumper in the chosen lane.
        let mut clearance = f64::INFINITY;
        let max_len = mathf::max(cfg.spawn.light_length, cfg.spawn.heavy_length);
        for rec in &world.vehicles {
            if rec.occupies(lane) {
                let rear = rec.state.position_x - rec.state.length / 2.0;
                clearance = mathf::min(clearance, rear - max_len);
            }
        }
        if clearance < entry_gap {
            continue;
        }
        let y = cfg.lane_center(lane);
        let state = draw_spawn_state(&mut world.rng, cfg, y);
        let id = world.insert_vehicle(state, lane, Controller::Ambient);
        spawned.push(id);
        world.pending_spawns -= 1;
    }
    spawned
}

/// Pairwise strict-overlap scan over all footprints, pruned by a sweep over
/// longitudinal positions. Pairs are reported with the smaller id first, in
/// sorted order.
pub fn detect_collisions(world: &WorldState) -> Vec<(VehicleId, VehicleId)> {
    let mut items: Vec<(f64, usize)> = world
        .vehicles
        .iter()
        .enumerate()
        .map(|(i, r)| (r.state.position_x, i))
        .collect();
    items.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(world.vehicles[a.1].id.cmp(&world.vehicles[b.1].id)));

    let mut pairs = Vec::new();
    for i in 0..items.len() {
        let (xi, ai) = items[i];
        let a = &world.vehicles[ai];
        let fa = Footprint::of(&a.state);
        for &(xj, bi) in items.iter().skip(i + 1) {
            let b = &world.vehicles[bi];
            let fb = Footprint::of(&b.state);
            if xj - xi > fa.reach() + fb.reach() {
                break;
            }
            if footprints_overlap(&fa, &fb) {
                let (lo, hi) = if a.id < b.id { (a.id, b.id) } else { (b.id, a.id) };
                pairs.push((lo, hi));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

enum PlannedMove {
    Ambient { a_long: f64, start_change: Option<usize> },
    Ego,
}

/// Advances the world one tick. `ego_controls` are road-frame longitudinal
/// and lateral accelerations applied to the ego vehicle, if present.
pub fn world_step(
    world: &mut WorldState,
    cfg: &HighwayConfig,
    ego_controls: Option<(f64, f64)>,
) -> StepEvents {
    let mut events = StepEvents::default();

    // Phase 1: decisions on a frozen snapshot.
    let mut plans: Vec<PlannedMove> = Vec::with_capacity(world.vehicles.len());
    for rec in &world.vehicles {
        match rec.controller {
            Controller::Ego => plans.push(PlannedMove::Ego),
            Controller::Ambient => {
                let a_long = world.ambient_accel(rec, cfg);
                let start_change = if rec.maneuver.is_none() {
                    let ctx = world.mobil_context(rec, cfg);
                    match mobil_lane_change(&rec.state, &ctx, &cfg.idm, &cfg.mobil) {
                        LaneChoice::Stay => None,
                        LaneChoice::Left => Some(rec.lane + 1),
                        LaneChoice::Right => Some(rec.lane - 1),
                    }
                } else {
                    None
                };
                plans.push(PlannedMove::Ambient { a_long, start_change });
            }
        }
    }

    // Phase 2: kinematics.
    let ramp_steps = cfg.ramp_steps();
    for (rec, plan) in world.vehicles.iter_mut().zip(plans) {
        match plan {
            PlannedMove::Ego => {
                let (a_long, a_lat) = ego_controls.unwrap_or((0.0, 0.0));
                let mut next = step_kinematics(&rec.state, a_long, a_lat, cfg.dt);
                // Curb clamp: the road edge stops lateral motion.
                let lo = next.width / 2.0;
                let hi = cfg.road_width() - next.width / 2.0;
                if next.position_y < lo || next.position_y > hi {
                    next.position_y = mathf::clamp(next.position_y, lo, hi);
                    let vx = next.speed * mathf::cos(next.heading);
                    next.speed = mathf::abs(vx);
                    next.heading = 0.0;
                }
                rec.state = next;
                rec.lane = cfg.lane_of(next.position_y);
            }
            PlannedMove::Ambient { a_long, start_change } => {
                if let Some(to) = start_change {
                    rec.maneuver = Some(LaneChange {
                        from: rec.lane,
                        to,
                        steps_left: ramp_steps,
                    });
                    rec.lane = to;
                }
                let a_lat = match &rec.maneuver {
                    Some(m) => {
                        let target_y = cfg.lane_center(m.to);
                        let t_rem = m.steps_left as f64 * cfg.dt;
                        let v_lat = rec.state.speed * mathf::sin(rec.state.heading);
                        let v_target = (target_y - rec.state.position_y) / t_rem;
                        mathf::clamp(
                            (v_target - v_lat) / cfg.dt,
                            -RAMP_LAT_ACCEL_CAP,
                            RAMP_LAT_ACCEL_CAP,
                        )
                    }
                    None => 0.0,
                };
                rec.state = step_kinematics(&rec.state, a_long, a_lat, cfg.dt);
                if let Some(m) = &mut rec.maneuver {
                    m.steps_left -= 1;
                    if m.steps_left == 0 {
                        // Snap onto the target lane center and zero the
                        // residual lateral velocity.
                        let vx = rec.state.speed * mathf::cos(rec.state.heading);
                        rec.state.position_y = cfg.lane_center(m.to);
                        rec.state.speed = mathf::abs(vx);
                        rec.state.heading = 0.0;
                        rec.maneuver = None;
                        events.lane_changes_completed.push(rec.id);
                    }
                }
            }
        }
    }

    // Phase 3: despawn ambient vehicles past the road end.
    world.vehicles.retain(|rec| {
        let gone = rec.controller == Controller::Ambient
            && rec.state.position_x - rec.state.length / 2.0 > cfg.length;
        if gone {
            events.despawned.push(rec.id);
        }
        !gone
    });

    // Phase 4: arrivals.
    events.spawned = spawn_vehicles(world, cfg);

    // Phase 5: collision scan.
    events.collisions = detect_collisions(world);

    world.time += cfg.dt;
    events
}
