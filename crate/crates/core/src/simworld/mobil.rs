//! MOBIL discretionary lane-change rule.
//!
//! A change is taken when the subject's own acceleration gain plus the
//! politeness-weighted gain of the affected followers exceeds a threshold,
//! and the new follower is never forced to brake harder than `b_safe`.

use serde::{Deserialize, Serialize};

use super::idm::{idm_acceleration, IdmParams};
use crate::riskfield::VehicleState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MobilParams {
    pub politeness: f64,
    pub threshold: f64,
    pub b_safe: f64,
}

impl Default for MobilParams {
    fn default() -> Self {
        MobilParams {
            politeness: 0.3,
            threshold: 0.2,
            b_safe: 3.0,
        }
    }
}

/// Leader/follower slots around a position in one lane.
#[derive(Clone, Copy, Debug, Default)]
pub struct LaneNeighbors {
    pub lead: Option<VehicleState>,
    pub follow: Option<VehicleState>,
}

/// Neighbor slots for the subject's lane and the adjacent lanes; `None`
/// means the lane does not exist.
#[derive(Clone, Copy, Debug, Default)]
pub struct MobilContext {
    pub current: LaneNeighbors,
    pub left: Option<LaneNeighbors>,
    pub right: Option<LaneNeighbors>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaneChoice {
    Stay,
    Left,
    Right,
}

/// Acceleration a follower would have behind an optional leader; an
/// overlapping (non-positive gap) configuration reads as hard braking so the
/// candidate is rejected by the safety criterion.
fn accel_or_reject(follower: &VehicleState, leader: Option<&VehicleState>, idm: &IdmParams) -> f64 {
    idm_acceleration(follower, leader, idm).unwrap_or(f64::NEG_INFINITY)
}

fn candidate_incentive(
    subject: &VehicleState,
    current: &LaneNeighbors,
    target: &LaneNeighbors,
    idm: &IdmParams,
    mobil: &MobilParams,
) -> Option<f64> {
    let a_self_old = accel_or_reject(subject, current.lead.as_ref(), idm);
    let a_self_new = accel_or_reject(subject, target.lead.as_ref(), idm);
    if !a_self_new.is_finite() {
        return None;
    }

    let mut others = 0.0;
    if let Some(nf) = &target.follow {
        let a_nf_new = accel_or_reject(nf, Some(subject), idm);
        if a_nf_new < -mobil.b_safe {
            return None;
        }
        let a_nf_old = accel_or_reject(nf, target.lead.as_ref(), idm);
        others += a_nf_new - a_nf_old;
    }
    if let Some(of) = &current.follow {
        let a_of_old = accel_or_reject(of, Some(subject), idm);
        let a_of_new = accel_or_reject(of, current.lead.as_ref(), idm);
        others += a_of_new - a_of_old;
    }

    Some((a_self_new - a_self_old) + mobil.politeness * others)
}

/// MOBIL decision for the subject given resolved neighbor slots.
/// Ties break stay over left over right.
pub fn mobil_lane_change(
    subject: &VehicleState,
    ctx: &MobilContext,
    idm: &IdmParams,
    mobil: &MobilParams,
) -> LaneChoice {
    let left = ctx
        .left
        .as_ref()
        .and_then(|lane| candidate_incentive(subject, &ctx.current, lane, idm, mobil));
    let right = ctx
        .right
        .as_ref()
        .and_then(|lane| candidate_incentive(subject, &ctx.current, lane, idm, mobil));

    let l = left.unwrap_or(f64::NEG_INFINITY);
    let r = right.unwrap_or(f64::NEG_INFINITY);
    let best = if l >= r { l } else { r };
    if best <= mobil.threshold {
        return LaneChoice::Stay;
    }
    if l >= r {
        LaneChoice::Left
    } else {
        LaneChoice::Right
    }
}
