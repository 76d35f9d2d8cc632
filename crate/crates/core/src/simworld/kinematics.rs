//! Point-mass kinematic integration in the road frame.

use crate::mathf;
use crate::riskfield::VehicleState;

/// Advances one vehicle by `dt` under road-frame longitudinal and lateral
/// accelerations. The longitudinal velocity component is floored at zero and
/// the heading follows the resulting velocity vector; the stored
/// acceleration is the projection of the commanded accelerations onto the
/// new heading.
pub fn step_kinematics(v: &VehicleState, a_long: f64, a_lat: f64, dt: f64) -> VehicleState {
    debug_assert!(dt > 0.0);
    let vx = v.speed * mathf::cos(v.heading);
    let vy = v.speed * mathf::sin(v.heading);

    let x = v.position_x + vx * dt + 0.5 * a_long * dt * dt;
    let y = v.position_y + vy * dt + 0.5 * a_lat * dt * dt;

    let vx = mathf::max(0.0, vx + a_long * dt);
    let vy = vy + a_lat * dt;

    let speed = mathf::hypot(vx, vy);
    let heading = if vx == 0.0 && vy == 0.0 {
        0.0
    } else {
        mathf::atan2(vy, vx)
    };
    let acceleration = a_long * mathf::cos(heading) + a_lat * mathf::sin(heading);

    VehicleState {
        position_x: x,
        position_y: y,
        speed,
        heading,
        acceleration,
        ..*v
    }
}
