//! Surrogate safety measures and per-episode aggregation.
//!
//! Conflicts are flagged per step from the union of three measures — time to
//! collision, deceleration rate to avoid a crash, and post-encroachment time
//! — each against its configured threshold with the boundary owned by the
//! non-conflict side. A conflict event is a maximal contiguous run of flagged
//! steps for one pair, so a prolonged approach counts once. Potential
//! collision energy accumulates over flagged steps into the episode PCEC.
//!
//! All functions are pure over the episode log; the same scan serves live
//! episodes and offline replays.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::mathf;
use crate::riskfield::{self, RiskFieldParams, VClass, VehicleState};
use crate::simworld::{bumper_gap, footprints_overlap, Footprint, VehicleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricError {
    /// Footprints already overlap; this is a collision, not a conflict.
    NegativeGap,
    /// The episode log is empty or loses track of the subject.
    IncompleteLog,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::NegativeGap => write!(f, "bumper gap is negative"),
            MetricError::IncompleteLog => {
                write!(f, "episode log is empty or missing the subject")
            }
        }
    }
}

impl core::error::Error for MetricError {}

/// Conflict thresholds: TTC strictly below, DRAC strictly above, PET
/// strictly below.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricThresholds {
    pub ttc: f64,
    pub drac: f64,
    pub pet: f64,
}

impl Default for MetricThresholds {
    fn default() -> Self {
        MetricThresholds {
            ttc: 3.0,
            drac: 3.0,
            pet: 2.0,
        }
    }
}

/// Time to collision: bumper gap over closing speed, infinite when the
/// follower is not closing in.
pub fn ttc(leader: &VehicleState, follower: &VehicleState) -> Result<f64, MetricError> {
    let gap = bumper_gap(follower, leader);
    if gap < 0.0 {
        return Err(MetricError::NegativeGap);
    }
    let closing = follower.speed - leader.speed;
    if closing > 0.0 {
        Ok(gap / closing)
    } else {
        Ok(f64::INFINITY)
    }
}

/// Deceleration rate to avoid a crash: `(Δv)²/(2·gap)` when closing, else 0.
pub fn drac(leader: &VehicleState, follower: &VehicleState) -> Result<f64, MetricError> {
    let gap = bumper_gap(follower, leader);
    if gap < 0.0 {
        return Err(MetricError::NegativeGap);
    }
    let closing = follower.speed - leader.speed;
    if closing > 0.0 {
        if gap == 0.0 {
            Ok(f64::INFINITY)
        } else {
            Ok(closing * closing / (2.0 * gap))
        }
    } else {
        Ok(0.0)
    }
}

/// Axis-aligned conflict area used by the post-encroachment measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConflictArea {
    pub cx: f64,
    pub cy: f64,
    pub half_length: f64,
    pub half_width: f64,
}

impl ConflictArea {
    fn footprint(&self) -> Footprint {
        Footprint {
            cx: self.cx,
            cy: self.cy,
            ux: 1.0,
            uy: 0.0,
            half_length: self.half_length,
            half_width: self.half_width,
        }
    }

    /// Area covered by a vehicle's footprint at a given instant.
    pub fn from_state(state: &VehicleState) -> Self {
        ConflictArea {
            cx: state.position_x,
            cy: state.position_y,
            half_length: state.length / 2.0,
            half_width: state.width / 2.0,
        }
    }
}

/// Post-encroachment time between two time-aligned trajectories and a shared
/// conflict area: the delay from the first vehicle's footprint leaving the
/// area to the second's entering it. Infinite when either never occupies the
/// area; zero when they occupy it simultaneously.
pub fn pet(
    first: &[(f64, VehicleState)],
    second: &[(f64, VehicleState)],
    area: &ConflictArea,
) -> f64 {
    let zone = area.footprint();
    let occupied = |traj: &[(f64, VehicleState)]| -> Vec<(f64, bool)> {
        traj.iter()
            .map(|(t, s)| (*t, footprints_overlap(&Footprint::of(s), &zone)))
            .collect()
    };
    let occ_first = occupied(first);
    let occ_second = occupied(second);

    let exit_first = occ_first
        .iter()
        .rev()
        .find(|(_, inside)| *inside)
        .map(|(t, _)| *t);
    let Some(exit_first) = exit_first else {
        return f64::INFINITY;
    };
    let enter_second = occ_second
        .iter()
        .find(|(_, inside)| *inside)
        .map(|(t, _)| *t);
    let Some(enter_second) = enter_second else {
        return f64::INFINITY;
    };
    mathf::max(0.0, enter_second - exit_first)
}

/// Measures for one pair at one step; absent measures use their neutral
/// values (infinite TTC/PET, zero DRAC).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairMeasures {
    pub ttc: f64,
    pub drac: f64,
    pub pet: f64,
}

impl PairMeasures {
    pub const NEUTRAL: PairMeasures = PairMeasures {
        ttc: f64::INFINITY,
        drac: 0.0,
        pet: f64::INFINITY,
    };
}

/// Which measures fired for a flagged step or event.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TriggerSet {
    pub ttc: bool,
    pub drac: bool,
    pub pet: bool,
}

impl TriggerSet {
    pub fn any(&self) -> bool {
        self.ttc || self.drac || self.pet
    }

    fn merge(&mut self, other: TriggerSet) {
        self.ttc |= other.ttc;
        self.drac |= other.drac;
        self.pet |= other.pet;
    }
}

impl fmt::Display for TriggerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (on, name) in [(self.ttc, "TTC"), (self.drac, "DRAC"), (self.pet, "PET")] {
            if on {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "{name}")?;
                first = false;
            }
        }
        if first {
            write!(f, "-")?;
        }
        Ok(())
    }
}

/// Union conflict rule: flagged when any measure crosses its threshold.
/// Exactly-at-threshold values do not trigger.
pub fn conflict_flag(measures: &PairMeasures, thresholds: &MetricThresholds) -> (bool, TriggerSet) {
    let triggers = TriggerSet {
        ttc: measures.ttc < thresholds.ttc,
        drac: measures.drac > thresholds.drac,
        pet: measures.pet < thresholds.pet,
    };
    (triggers.any(), triggers)
}

/// Potential collision energy of a conflicting pair. The kinetic-energy
/// difference branch applies only when strictly positive; the boundary
/// belongs to the follower-energy branch.
pub fn pce(follower: (f64, f64), leader: (f64, f64), alpha_f: f64, alpha_l: f64) -> f64 {
    let (m_f, v_f) = follower;
    let (m_l, v_l) = leader;
    let diff = m_f * v_f * v_f - m_l * v_l * v_l;
    if diff > 0.0 {
        0.5 * alpha_l * alpha_f * diff
    } else {
        0.5 * alpha_l * alpha_f * m_f * v_f * v_f
    }
}

/// One pair-step of a conflict timeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairStep {
    pub follower_mass: f64,
    pub follower_speed: f64,
    pub leader_mass: f64,
    pub leader_speed: f64,
    pub measures: PairMeasures,
}

/// PCEC for one pair timeline: the sum of per-step PCE over flagged steps.
pub fn pcec(timeline: &[PairStep], thresholds: &MetricThresholds) -> f64 {
    let mut total = 0.0;
    for step in timeline {
        let (flagged, _) = conflict_flag(&step.measures, thresholds);
        if flagged {
            total += pce(
                (step.follower_mass, step.follower_speed),
                (step.leader_mass, step.leader_speed),
                1.0,
                1.0,
            );
        }
    }
    total
}

/// One vehicle observed at one step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VehicleSnapshot {
    pub id: VehicleId,
    pub state: VehicleState,
    pub lane: usize,
}

/// One step of an episode: every visible vehicle plus collision pairs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub time: f64,
    pub vehicles: Vec<VehicleSnapshot>,
    pub collisions: Vec<(VehicleId, VehicleId)>,
}

/// Complete record of one episode around a tracked subject.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeLog {
    pub dt: f64,
    pub subject: VehicleId,
    pub steps: Vec<StepRecord>,
}

/// Scan configuration shared by live evaluation and replay.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanParams {
    pub field: RiskFieldParams,
    pub thresholds: MetricThresholds,
    /// Longitudinal range within which other vehicles contribute to the
    /// subject's aggregate risk.
    pub perception_range: f64,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            field: RiskFieldParams::default(),
            thresholds: MetricThresholds::default(),
            perception_range: 50.0,
        }
    }
}

/// A maximal contiguous run of conflict-flagged steps for one pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConflictEvent {
    /// Time of the first flagged step.
    pub time: f64,
    pub pair: (VehicleId, VehicleId),
    pub trigger: TriggerSet,
    pub heavy_involved: bool,
    /// Total potential collision energy accumulated over the run (J).
    pub pce: f64,
}

/// Per-episode aggregates around the subject.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EpisodeReport {
    pub avg_speed: f64,
    pub lane_changes: u32,
    pub collisions: u32,
    pub conflicts: u32,
    pub heavy_in_conflicts: u32,
    pub light_in_conflicts: u32,
    pub pcec_joules: f64,
    pub mean_adr: f64,
}

fn snapshot_of(step: &StepRecord, id: VehicleId) -> Option<&VehicleSnapshot> {
    step.vehicles.iter().find(|v| v.id == id)
}

/// Aggregate risk on the subject from every other vehicle within the
/// perception range, in snapshot order.
pub fn step_adr(step: &StepRecord, subject: VehicleId, scan: &ScanParams) -> Option<f64> {
    let ego = snapshot_of(step, subject)?;
    let mut total = 0.0;
    for v in &step.vehicles {
        if v.id == subject {
            continue;
        }
        let dx = v.state.position_x - ego.state.position_x;
        if mathf::abs(dx) > scan.perception_range {
            continue;
        }
        match riskfield::field_force(&v.state, &ego.state, &scan.field) {
            Ok(force) => total += force.magnitude,
            Err(_) => total += f64::INFINITY,
        }
    }
    Some(total)
}

/// Internal per-step flag for one (subject, other) pair.
struct FlaggedStep {
    step_idx: usize,
    other: VehicleId,
    other_class: VClass,
    trigger: TriggerSet,
    pce: f64,
}

/// Measures TTC and DRAC between the subject and its nearest same-lane
/// leader and follower, and PET around lane entries, then reduces flagged
/// steps to maximal runs per pair.
pub fn scan_conflicts(
    log: &EpisodeLog,
    scan: &ScanParams,
) -> Result<Vec<ConflictEvent>, MetricError> {
    if log.steps.is_empty() {
        return Err(MetricError::IncompleteLog);
    }
    let mut flagged: Vec<FlaggedStep> = Vec::new();

    for (step_idx, step) in log.steps.iter().enumerate() {
        let ego = snapshot_of(step, log.subject).ok_or(MetricError::IncompleteLog)?;

        // Same-lane nearest leader and follower relative to the subject.
        let mut lead: Option<&VehicleSnapshot> = None;
        let mut follow: Option<&VehicleSnapshot> = None;
        for v in &step.vehicles {
            if v.id == log.subject || v.lane != ego.lane {
                continue;
            }
            if v.state.position_x > ego.state.position_x {
                if lead.map_or(true, |l| v.state.position_x < l.state.position_x) {
                    lead = Some(v);
                }
            } else if follow.map_or(true, |f| v.state.position_x > f.state.position_x) {
                follow = Some(v);
            }
        }

        let mut pair_measures: Vec<(VehicleId, VClass, PairMeasures, (f64, f64), (f64, f64))> =
            Vec::new();
        if let Some(lead) = lead {
            if let (Ok(t), Ok(d)) = (ttc(&lead.state, &ego.state), drac(&lead.state, &ego.state)) {
                pair_measures.push((
                    lead.id,
                    lead.state.vclass,
                    PairMeasures {
                        ttc: t,
                        drac: d,
                        pet: f64::INFINITY,
                    },
                    (ego.state.mass, ego.state.speed),
                    (lead.state.mass, lead.state.speed),
                ));
            }
        }
        if let Some(follow) = follow {
            if let (Ok(t), Ok(d)) = (ttc(&ego.state, &follow.state), drac(&ego.state, &follow.state))
            {
                pair_measures.push((
                    follow.id,
                    follow.state.vclass,
                    PairMeasures {
                        ttc: t,
                        drac: d,
                        pet: f64::INFINITY,
                    },
                    (follow.state.mass, follow.state.speed),
                    (ego.state.mass, ego.state.speed),
                ));
            }
        }

        // Post-encroachment around lane entries: when either member of a
        // pair enters the other's lane, the entrant's footprint at entry is
        // the conflict area and the other vehicle is the earlier occupant.
        if step_idx > 0 {
            let prev = &log.steps[step_idx - 1];
            let mut entries: Vec<(VehicleId, &VehicleSnapshot)> = Vec::new();
            if let Some(prev_ego) = snapshot_of(prev, log.subject) {
                if prev_ego.lane != ego.lane {
                    entries.push((log.subject, ego));
                }
            }
            for v in &step.vehicles {
                if v.id == log.subject || v.lane != ego.lane {
                    continue;
                }
                if let Some(prev_v) = snapshot_of(prev, v.id) {
                    if prev_v.lane != v.lane {
                        entries.push((v.id, v));
                    }
                }
            }
            for (entrant_id, entrant) in entries {
                let area = ConflictArea::from_state(&entrant.state);
                let (other_id, other_snap) = if entrant_id == log.subject {
                    // Check each nearby vehicle in the entered lane.
                    let mut best: Option<(&VehicleSnapshot, f64)> = None;
                    for v in &step.vehicles {
                        if v.id == log.subject || v.lane != ego.lane {
                            continue;
                        }
                        let d = mathf::abs(v.state.position_x - ego.state.position_x);
                        if best.map_or(true, |(_, bd)| d < bd) {
                            best = Some((v, d));
                        }
                    }
                    match best {
                        Some((v, _)) => (v.id, v),
                        None => continue,
                    }
                } else {
                    (entrant_id, entrant)
                };
                let occupant_id = if entrant_id == log.subject {
                    other_id
                } else {
                    log.subject
                };
                let traj = |id: VehicleId| -> Vec<(f64, VehicleState)> {
                    log.steps[..=step_idx]
                        .iter()
                        .filter_map(|s| snapshot_of(s, id).map(|v| (s.time, v.state)))
                        .collect()
                };
                let entrant_traj = traj(entrant_id);
                let occupant_traj = traj(occupant_id);
                let gap_time = pet(&occupant_traj, &entrant_traj, &area);

                let other = if entrant_id == log.subject {
                    other_snap
                } else {
                    entrant
                };
                let measures = PairMeasures {
                    pet: gap_time,
                    ..PairMeasures::NEUTRAL
                };
                let (follower, leader) = if other.state.position_x <= ego.state.position_x {
                    (
                        (other.state.mass, other.state.speed),
                        (ego.state.mass, ego.state.speed),
                    )
                } else {
                    (
                        (ego.state.mass, ego.state.speed),
                        (other.state.mass, other.state.speed),
                    )
                };
                pair_measures.push((other.id, other.state.vclass, measures, follower, leader));
            }
        }

        for (other, other_class, measures, follower, leader) in pair_measures {
            let (hit, trigger) = conflict_flag(&measures, &scan.thresholds);
            if hit {
                flagged.push(FlaggedStep {
                    step_idx,
                    other,
                    other_class,
                    trigger,
                    pce: pce(follower, leader, 1.0, 1.0),
                });
            }
        }
    }

    // Reduce flags to maximal contiguous runs per pair. Scanning in pair
    // order keeps event order deterministic.
    let mut events: Vec<ConflictEvent> = Vec::new();
    let mut partners: Vec<VehicleId> = flagged.iter().map(|f| f.other).collect();
    partners.sort_unstable();
    partners.dedup();
    for partner in partners {
        let mut run: Option<(usize, ConflictEvent)> = None;
        for f in flagged.iter().filter(|f| f.other == partner) {
            match &mut run {
                Some((last_idx, event)) if f.step_idx <= *last_idx + 1 => {
                    *last_idx = f.step_idx;
                    event.trigger.merge(f.trigger);
                    event.pce += f.pce;
                }
                _ => {
                    if let Some((_, done)) = run.take() {
                        events.push(done);
                    }
                    run = Some((
                        f.step_idx,
                        ConflictEvent {
                            time: log.steps[f.step_idx].time,
                            pair: (log.subject, partner),
                            trigger: f.trigger,
                            heavy_involved: f.other_class == VClass::Heavy,
                            pce: f.pce,
                        },
                    ));
                }
            }
        }
        if let Some((_, done)) = run.take() {
            events.push(done);
        }
    }
    events.sort_by(|a, b| a.time.partial_cmp(&b.time).unwrap().then(a.pair.1.cmp(&b.pair.1)));
    Ok(events)
}

/// Aggregates the episode log into the per-episode report.
pub fn episode_report(log: &EpisodeLog, scan: &ScanParams) -> Result<EpisodeReport, MetricError> {
    if log.steps.is_empty() {
        return Err(MetricError::IncompleteLog);
    }
    let events = scan_conflicts(log, scan)?;

    let mut speed_sum = 0.0;
    let mut adr_sum = 0.0;
    let mut lane_changes = 0u32;
    let mut collisions = 0u32;
    let mut prev_lane: Option<usize> = None;
    let mut in_collision = false;

    for step in &log.steps {
        let ego = snapshot_of(step, log.subject).ok_or(MetricError::IncompleteLog)?;
        speed_sum += ego.state.speed * mathf::cos(ego.state.heading);
        adr_sum += step_adr(step, log.subject, scan).unwrap_or(0.0);
        if let Some(prev) = prev_lane {
            if prev != ego.lane {
                lane_changes += 1;
            }
        }
        prev_lane = Some(ego.lane);

        let involved = step
            .collisions
            .iter()
            .any(|&(a, b)| a == log.subject || b == log.subject);
        if involved && !in_collision {
            collisions += 1;
        }
        in_collision = involved;
    }

    let n = log.steps.len() as f64;
    let heavy = events.iter().filter(|e| e.heavy_involved).count() as u32;
    Ok(EpisodeReport {
        avg_speed: speed_sum / n,
        lane_changes,
        collisions,
        conflicts: events.len() as u32,
        heavy_in_conflicts: heavy,
        light_in_conflicts: events.len() as u32 - heavy,
        // The +0.0 normalizes the empty sum's negative zero.
        pcec_joules: events.iter().map(|e| e.pce).sum::<f64>() + 0.0,
        mean_adr: adr_sum / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn veh(x: f64, v: f64) -> VehicleState {
        VehicleState {
            position_x: x,
            position_y: 1.75,
            speed: v,
            heading: 0.0,
            acceleration: 0.0,
            mass: 1500.0,
            vclass: VClass::Light,
            length: 4.5,
            width: 1.8,
        }
    }

    #[test]
    fn ttc_non_closing_is_infinite() {
        let leader = veh(50.0, 25.0);
        let follower = veh(0.0, 20.0);
        assert_eq!(ttc(&leader, &follower).unwrap(), f64::INFINITY);
    }

    #[test]
    fn ttc_exact_threshold_does_not_trigger() {
        // Bumper gap 30 m closing at 10 m/s: exactly 3.0 s.
        let leader = veh(34.5, 10.0);
        let follower = veh(0.0, 20.0);
        let t = ttc(&leader, &follower).unwrap();
        assert_eq!(t, 3.0);
        let measures = PairMeasures {
            ttc: t,
            ..PairMeasures::NEUTRAL
        };
        let (hit, _) = conflict_flag(&measures, &MetricThresholds::default());
        assert!(!hit);
    }

    #[test]
    fn ttc_below_threshold_triggers() {
        // Bumper gap 12 m closing at 8 m/s: 1.5 s.
        let leader = veh(16.5, 12.0);
        let follower = veh(0.0, 20.0);
        let t = ttc(&leader, &follower).unwrap();
        assert!((t - 1.5).abs() < 1e-12);
        let measures = PairMeasures {
            ttc: t,
            ..PairMeasures::NEUTRAL
        };
        let (hit, set) = conflict_flag(&measures, &MetricThresholds::default());
        assert!(hit);
        assert_eq!(
            set,
            TriggerSet {
                ttc: true,
                drac: false,
                pet: false
            }
        );
    }

    #[test]
    fn drac_cases() {
        let follower = veh(0.0, 20.0);
        // Non-closing.
        assert_eq!(drac(&veh(30.0, 25.0), &follower).unwrap(), 0.0);
        // Gap 25 m closing 10 m/s: 2.0, below threshold.
        let d = drac(&veh(29.5, 10.0), &follower).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        // Gap 10 m closing 9 m/s: 4.05, above threshold.
        let d = drac(&veh(14.5, 11.0), &follower).unwrap();
        assert!((d - 4.05).abs() < 1e-12);
        let measures = PairMeasures {
            drac: d,
            ..PairMeasures::NEUTRAL
        };
        assert!(conflict_flag(&measures, &MetricThresholds::default()).0);
    }

    #[test]
    fn negative_gap_is_an_error() {
        let leader = veh(2.0, 10.0);
        let follower = veh(0.0, 20.0);
        assert_eq!(ttc(&leader, &follower), Err(MetricError::NegativeGap));
        assert_eq!(drac(&leader, &follower), Err(MetricError::NegativeGap));
    }

    #[test]
    fn pet_staged_crossing() {
        // First vehicle traverses the area and leaves; second arrives later.
        let area = ConflictArea {
            cx: 0.0,
            cy: 0.0,
            half_length: 2.0,
            half_width: 2.0,
        };
        let mut first = Vec::new();
        let mut second = Vec::new();
        for i in 0..200 {
            let t = i as f64 * 0.1;
            let mut a = veh(0.0, 10.0);
            a.position_x = -10.0 + 10.0 * t.min(10.0);
            a.position_y = 0.0;
            first.push((t, a));
            let mut b = veh(0.0, 10.0);
            // Arrives from the side, entering the area at t = 11.2.
            b.position_x = 0.0;
            b.position_y = -40.0 + if t >= 11.2 { 37.5 } else { 3.5 * t / 11.2 };
            second.push((t, b));
        }
        // First exits once its rear clears x > 2 + 2.25, i.e. t past ~1.4;
        // last overlapping sample defines the exit time.
        let gap = pet(&first, &second, &area);
        let exit_t = first
            .iter()
            .rev()
            .find(|(_, s)| footprints_overlap(&Footprint::of(s), &area.footprint()))
            .unwrap()
            .0;
        assert!((gap - (11.2 - exit_t)).abs() < 1e-9);
    }

    #[test]
    fn pet_never_entering_is_infinite() {
        let area = ConflictArea {
            cx: 0.0,
            cy: 0.0,
            half_length: 2.0,
            half_width: 2.0,
        };
        let first = vec![(0.0, veh(0.0, 10.0))];
        let second = vec![(0.0, veh(500.0, 10.0))];
        assert_eq!(pet(&first, &second, &area), f64::INFINITY);
    }

    #[test]
    fn pet_simultaneous_occupancy_is_zero() {
        let area = ConflictArea {
            cx: 0.0,
            cy: 1.75,
            half_length: 3.0,
            half_width: 2.0,
        };
        let first = vec![(0.0, veh(0.0, 10.0)), (0.1, veh(1.0, 10.0))];
        let second = vec![(0.0, veh(1.0, 10.0)), (0.1, veh(2.0, 10.0))];
        assert_eq!(pet(&first, &second, &area), 0.0);
    }

    #[test]
    fn conflict_flag_union_keeps_one_event() {
        let measures = PairMeasures {
            ttc: 1.5,
            drac: 4.0,
            pet: f64::INFINITY,
        };
        let (hit, set) = conflict_flag(&measures, &MetricThresholds::default());
        assert!(hit);
        assert!(set.ttc && set.drac && !set.pet);
    }

    #[test]
    fn conflict_flag_monotone_in_each_measure() {
        let thresholds = MetricThresholds::default();
        let base = PairMeasures {
            ttc: 2.0,
            drac: 0.0,
            pet: f64::INFINITY,
        };
        assert!(conflict_flag(&base, &thresholds).0);
        // Worsening any measure never clears the flag.
        for worse in [
            PairMeasures { ttc: 1.0, ..base },
            PairMeasures { drac: 5.0, ..base },
            PairMeasures { pet: 0.5, ..base },
        ] {
            assert!(conflict_flag(&worse, &thresholds).0);
        }
    }

    #[test]
    fn pce_branches() {
        // Zero follower speed gives zero energy.
        assert_eq!(pce((1500.0, 0.0), (1200.0, 20.0), 1.0, 1.0), 0.0);
        // Heavy follower against light leader at equal speed.
        let p = pce((30000.0, 20.0), (1500.0, 20.0), 1.0, 1.0);
        assert!((p - 0.5 * (12.0e6 - 6.0e5)).abs() < 1e-6);
        assert!((p - 5.7e6).abs() < 1e-6);
        // Exactly equal energies belong to the follower-energy branch.
        let q = pce((2000.0, 10.0), (2000.0, 10.0), 1.0, 1.0);
        assert_eq!(q, 0.5 * 2000.0 * 100.0);
        // The branch discontinuity equals half the leader energy.
        let eps = 1e-9;
        let above = pce((2000.0 + eps, 10.0), (2000.0, 10.0), 1.0, 1.0);
        let jump = q - above;
        assert!((jump - 0.5 * 2000.0 * 100.0).abs() < 1e-3);
    }

    #[test]
    fn pce_positive_unless_follower_stopped() {
        for (mf, vf, ml, vl) in [
            (1000.0, 5.0, 40000.0, 30.0),
            (40000.0, 30.0, 1000.0, 5.0),
            (1500.0, 0.0001, 1500.0, 0.0001),
        ] {
            assert!(pce((mf, vf), (ml, vl), 1.0, 1.0) > 0.0);
        }
    }

    #[test]
    fn pcec_empty_and_single() {
        let thresholds = MetricThresholds::default();
        assert_eq!(pcec(&[], &thresholds), 0.0);
        let step = PairStep {
            follower_mass: 2000.0,
            follower_speed: 25.0,
            leader_mass: 1500.0,
            leader_speed: 20.0,
            measures: PairMeasures {
                ttc: 1.0,
                ..PairMeasures::NEUTRAL
            },
        };
        let expected = pce((2000.0, 25.0), (1500.0, 20.0), 1.0, 1.0);
        assert_eq!(pcec(&[step], &thresholds), expected);
    }

    #[test]
    fn pcec_matches_brute_force_sum() {
        let thresholds = MetricThresholds::default();
        let mut timeline = Vec::new();
        for i in 0..3 {
            timeline.push(PairStep {
                follower_mass: 2000.0 + i as f64,
                follower_speed: 25.0,
                leader_mass: 1500.0,
                leader_speed: 20.0 - i as f64,
                measures: PairMeasures {
                    ttc: if i == 1 { 5.0 } else { 1.0 },
                    ..PairMeasures::NEUTRAL
                },
            });
        }
        let total = pcec(&timeline, &thresholds);
        let mut brute = 0.0;
        for step in &timeline {
            if conflict_flag(&step.measures, &thresholds).0 {
                brute += pce(
                    (step.follower_mass, step.follower_speed),
                    (step.leader_mass, step.leader_speed),
                    1.0,
                    1.0,
                );
            }
        }
        assert!((total - brute).abs() <= 1e-12 * brute.abs());
        // PCEC grows monotonically as more steps become conflicting.
        let mut worse = timeline.clone();
        worse[1].measures.ttc = 1.0;
        assert!(pcec(&worse, &thresholds) >= total);
    }

    fn one_vehicle_log(speed: f64, steps: usize) -> EpisodeLog {
        let mut log = EpisodeLog {
            dt: 0.1,
            subject: 0,
            steps: Vec::new(),
        };
        for i in 0..steps {
            let t = i as f64 * 0.1;
            let mut s = veh(100.0 + speed * t, speed);
            s.position_y = 1.75;
            log.steps.push(StepRecord {
                time: t,
                vehicles: vec![VehicleSnapshot {
                    id: 0,
                    state: s,
                    lane: 0,
                }],
                collisions: Vec::new(),
            });
        }
        log
    }

    #[test]
    fn lone_subject_report_is_clean() {
        let log = one_vehicle_log(20.0, 50);
        let report = episode_report(&log, &ScanParams::default()).unwrap();
        assert!((report.avg_speed - 20.0).abs() < 1e-12);
        assert_eq!(report.conflicts, 0);
        assert_eq!(report.collisions, 0);
        assert_eq!(report.lane_changes, 0);
        assert_eq!(report.pcec_joules, 0.0);
        assert_eq!(report.mean_adr, 0.0);
    }

    #[test]
    fn empty_log_is_incomplete() {
        let log = EpisodeLog {
            dt: 0.1,
            subject: 0,
            steps: Vec::new(),
        };
        assert_eq!(
            episode_report(&log, &ScanParams::default()),
            Err(MetricError::IncompleteLog)
        );
    }

    #[test]
    fn staged_heavy_conflict_is_counted_once() {
        // A heavy leader closing fast: several consecutive flagged steps
        // must reduce to exactly one event attributed to the heavy class.
        let mut log = EpisodeLog {
            dt: 0.1,
            subject: 0,
            steps: Vec::new(),
        };
        for i in 0..30 {
            let t = i as f64 * 0.1;
            let ego = veh(20.0 * t, 20.0);
            let mut heavy = veh(20.0 + 8.0 * t, 8.0);
            heavy.mass = 30000.0;
            heavy.vclass = VClass::Heavy;
            heavy.length = 12.0;
            heavy.width = 2.5;
            log.steps.push(StepRecord {
                time: t,
                vehicles: vec![
                    VehicleSnapshot {
                        id: 0,
                        state: ego,
                        lane: 0,
                    },
                    VehicleSnapshot {
                        id: 1,
                        state: heavy,
                        lane: 0,
                    },
                ],
                collisions: Vec::new(),
            });
        }
        let events = scan_conflicts(&log, &ScanParams::default()).unwrap();
        assert_eq!(events.len(), 1);
        assert!(events[0].trigger.ttc || events[0].trigger.drac);
        assert!(events[0].heavy_involved);
        let report = episode_report(&log, &ScanParams::default()).unwrap();
        assert_eq!(report.conflicts, 1);
        assert_eq!(report.heavy_in_conflicts, 1);
        assert_eq!(report.light_in_conflicts, 0);
        assert!(report.pcec_joules > 0.0);
        assert!(report.mean_adr > 0.0);
    }

    #[test]
    fn report_matches_independent_rescan() {
        let mut log = one_vehicle_log(22.0, 80);
        // Add a light follower that closes in.
        for (i, step) in log.steps.iter_mut().enumerate() {
            let t = i as f64 * 0.1;
            let chaser = veh(40.0 + 30.0 * t, 30.0);
            step.vehicles.push(VehicleSnapshot {
                id: 7,
                state: chaser,
                lane: 0,
            });
        }
        // Recompute subject averages by an independent scan over the log.
        let scan = ScanParams::default();
        let report = episode_report(&log, &scan).unwrap();
        let n = log.steps.len() as f64;
        let mut speed = 0.0;
        let mut adr_sum = 0.0;
        for step in &log.steps {
            let ego = step.vehicles.iter().find(|v| v.id == 0).unwrap();
            speed += ego.state.speed * ego.state.heading.cos();
            adr_sum += step_adr(step, 0, &scan).unwrap();
        }
        assert_eq!(report.avg_speed, speed / n);
        assert_eq!(report.mean_adr, adr_sum / n);
        assert_eq!(report.light_in_conflicts + report.heavy_in_conflicts, report.conflicts);
    }
}
