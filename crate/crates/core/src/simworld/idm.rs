//! Intelligent Driver Model car-following acceleration.

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::mathf;
use crate::riskfield::VehicleState;

/// IDM parameters. `v0` is the desired (free-road) speed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdmParams {
    pub a_max: f64,
    pub b_comf: f64,
    pub v0: f64,
    pub s0: f64,
    pub t_headway: f64,
    pub delta: f64,
}

impl Default for IdmParams {
    fn default() -> Self {
        IdmParams {
            a_max: 2.0,
            b_comf: 2.0,
            v0: 120.0 / 3.6,
            s0: 2.0,
            t_headway: 1.2,
            delta: 4.0,
        }
    }
}

/// Bumper-to-bumper gap between a follower and its leader.
pub fn bumper_gap(follower: &VehicleState, leader: &VehicleState) -> f64 {
    (leader.position_x - follower.position_x) - (leader.length + follower.length) / 2.0
}

/// IDM acceleration for `follower`, optionally interacting with `leader`.
///
/// Free term `a_max·(1 − (v/v0)^δ)` plus, with a leader, the interaction
/// `−a_max·(s*/s)²` with `s* = s0 + max(0, v·T + v·Δv/(2·√(a_max·b_comf)))`.
pub fn idm_acceleration(
    follower: &VehicleState,
    leader: Option<&VehicleState>,
    params: &IdmParams,
) -> Result<f64, SimError> {
    let v = follower.speed;
    let free = params.a_max * (1.0 - mathf::powf(v / params.v0, params.delta));
    let Some(leader) = leader else {
        return Ok(free);
    };
    let gap = bumper_gap(follower, leader);
    if gap <= 0.0 {
        return Err(SimError::NonPositiveGap);
    }
    let closing = v - leader.speed;
    let dynamic = v * params.t_headway
        + v * closing / (2.0 * mathf::sqrt(params.a_max * params.b_comf));
    let s_star = params.s0 + mathf::max(0.0, dynamic);
    Ok(free - params.a_max * (s_star / gap) * (s_star / gap))
}
