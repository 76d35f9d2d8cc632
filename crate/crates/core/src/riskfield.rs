//! Weight-aware kinetic risk fields.
//!
//! A moving vehicle emits a kinetic field whose strength grows with its mass,
//! class weighting, and speed, and decays with a speed-warped pseudo-distance.
//! The force that field exerts on another vehicle additionally depends on the
//! relative motion of the pair. Summing force magnitudes over all surrounding
//! vehicles gives the anticipated driving risk (ADR) used by the reward.
//!
//! Geometry lives in a road-aligned frame: `x` points along the lane axis,
//! `y` is the lateral offset on the left side of travel. Pair angles (θ
//! between velocities, γ between accelerations, α between the center line and
//! the lane axis) are measured clockwise-positive, so a counterclockwise
//! rotation comes out negative. Zero-length vectors take angle 0 by
//! convention.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::mathf;

/// Vehicle class used for class-dependent field weighting and spawn masses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VClass {
    Light,
    Heavy,
}

/// Pose, kinematics, mass, and dimensions of one vehicle.
///
/// `heading` is the course angle in radians, zero along the lane axis;
/// `speed` is the velocity magnitude and `acceleration` the signed
/// acceleration along the heading.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VehicleState {
    pub position_x: f64,
    pub position_y: f64,
    pub speed: f64,
    pub heading: f64,
    pub acceleration: f64,
    pub mass: f64,
    pub vclass: VClass,
    pub length: f64,
    pub width: f64,
}

impl VehicleState {
    /// Velocity vector in the road frame.
    pub fn velocity(&self) -> (f64, f64) {
        (
            self.speed * mathf::cos(self.heading),
            self.speed * mathf::sin(self.heading),
        )
    }

    /// Acceleration vector in the road frame (signed along heading).
    pub fn accel_vector(&self) -> (f64, f64) {
        (
            self.acceleration * mathf::cos(self.heading),
            self.acceleration * mathf::sin(self.heading),
        )
    }

    /// Checks the positivity invariants on mass and dimensions.
    pub fn is_valid(&self) -> bool {
        self.mass > 0.0 && self.length > 0.0 && self.width > 0.0 && self.speed >= 0.0
    }
}

/// Undetermined field coefficients plus the fixed speed-term constants.
///
/// The speed-term constants are not configurable; every other coefficient is
/// a modelling choice and may be overridden via configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RiskFieldParams {
    /// Class weighting applied to light emitters.
    pub t_light: f64,
    /// Class weighting applied to heavy emitters.
    pub t_heavy: f64,
    /// Acceleration-skew coefficient in the field strength exponent (s²/m).
    pub beta1: f64,
    /// Relative-speed coefficient in the force exponent (s/m).
    pub beta2: f64,
    /// Relative-acceleration coefficient in the force exponent (s²/m).
    pub beta3: f64,
    /// Overall field strength scale.
    pub lambda_field: f64,
    /// Pseudo-distance compression coefficient.
    pub tau: f64,
    /// Coefficient on the emitter speed inside the longitudinal
    /// pseudo-distance exponential. Defaults to `tau` when unset.
    pub exp_coeff: Option<f64>,
    /// Use the receiving vehicle's speed in the force speed factor instead of
    /// the emitter's. Non-default variant; keep off for the reference model.
    pub speed_term_from_ov: bool,
}

impl RiskFieldParams {
    /// Fixed speed-term constants: `SPEED_COEFF · v^SPEED_EXP + SPEED_OFFSET`.
    pub const SPEED_COEFF: f64 = 1.566e-14;
    pub const SPEED_EXP: f64 = 6.687;
    pub const SPEED_OFFSET: f64 = 0.3345;

    /// Class weighting for an emitting vehicle.
    pub fn t_for(&self, class: VClass) -> f64 {
        match class {
            VClass::Light => self.t_light,
            VClass::Heavy => self.t_heavy,
        }
    }

    /// Effective exponent coefficient of the pseudo-distance (see
    /// [`RiskFieldParams::exp_coeff`]).
    pub fn exp_coeff(&self) -> f64 {
        self.exp_coeff.unwrap_or(self.tau)
    }

    /// Speed factor shared by field strength and field force.
    pub fn speed_term(&self, v: f64) -> f64 {
        Self::SPEED_COEFF * mathf::powf(v, Self::SPEED_EXP) + Self::SPEED_OFFSET
    }

    /// Checks the positivity invariants on all constrained coefficients.
    pub fn is_valid(&self) -> bool {
        self.t_light > 0.0
            && self.t_heavy > 0.0
            && self.lambda_field > 0.0
            && self.tau > 0.0
            && self.exp_coeff.map_or(true, |c| c > 0.0)
    }
}

impl Default for RiskFieldParams {
    /// Defaults chosen so the force falls below 1% of its 5 m value beyond
    /// roughly 100 m at highway speeds.
    fn default() -> Self {
        RiskFieldParams {
            t_light: 1.0,
            t_heavy: 0.6,
            beta1: 0.05,
            beta2: 0.05,
            beta3: 0.05,
            lambda_field: 1.0,
            tau: 0.2,
            exp_coeff: None,
            speed_term_from_ov: false,
        }
    }
}

/// A field force vector with its cached magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldForce {
    pub fx: f64,
    pub fy: f64,
    pub magnitude: f64,
}

impl FieldForce {
    fn from_magnitude_dir(magnitude: f64, ux: f64, uy: f64) -> Self {
        FieldForce {
            fx: magnitude * ux,
            fy: magnitude * uy,
            magnitude,
        }
    }
}

/// Errors from field evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// Emitter and evaluation point coincide; the field diverges there.
    SingularPosition,
    /// Grid specification with a non-positive step or empty range.
    InvalidGrid,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::SingularPosition => write!(f, "positions coincide: field is singular"),
            FieldError::InvalidGrid => write!(f, "grid step must be positive and ranges non-empty"),
        }
    }
}

impl core::error::Error for FieldError {}

/// Clockwise-positive signed angle from `a` to `b`, normalized to (−π, π].
/// Zero-length inputs give 0.
fn clockwise_angle(a: (f64, f64), b: (f64, f64)) -> f64 {
    if (a.0 == 0.0 && a.1 == 0.0) || (b.0 == 0.0 && b.1 == 0.0) {
        return 0.0;
    }
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    let ccw = mathf::atan2(cross, dot);
    // atan2 returns [−π, π]; negating flips the boundary to −π, so fold it.
    let cw = -ccw;
    if cw <= -core::f64::consts::PI {
        core::f64::consts::PI
    } else {
        cw
    }
}

/// Cosine of the clockwise angle between two vectors (even in the sign
/// convention, so it is computed directly from the normalized dot product).
/// Zero-length inputs give cos 0 = 1.
fn cos_between(a: (f64, f64), b: (f64, f64)) -> f64 {
    let na = mathf::hypot(a.0, a.1);
    let nb = mathf::hypot(b.0, b.1);
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    mathf::clamp((a.0 * b.0 + a.1 * b.1) / (na * nb), -1.0, 1.0)
}

/// Pair angles (θ, γ, α): clockwise angles between the velocities, the
/// accelerations, and from the lane axis to the SV→OV center line.
pub fn angles_between(sv: &VehicleState, ov: &VehicleState) -> (f64, f64, f64) {
    let theta = clockwise_angle(sv.velocity(), ov.velocity());
    let gamma = clockwise_angle(sv.accel_vector(), ov.accel_vector());
    let r = (ov.position_x - sv.position_x, ov.position_y - sv.position_y);
    let alpha = clockwise_angle((1.0, 0.0), r);
    (theta, gamma, alpha)
}

/// Pseudo-coordinate displacement from SV to OV: the longitudinal component
/// is compressed by the emitter's speed, both components scale with `tau`.
fn pseudo_delta(sv: &VehicleState, ov: &VehicleState, params: &RiskFieldParams) -> (f64, f64) {
    let dx = ov.position_x - sv.position_x;
    let dy = ov.position_y - sv.position_y;
    let kx = dx * params.tau / mathf::exp(params.exp_coeff() * sv.speed);
    let ky = dy * params.tau;
    (kx, ky)
}

/// Speed-warped pseudo-distance between the pair. Returns 0 when the
/// positions coincide; callers must treat 0 as singular.
pub fn pseudo_distance(sv: &VehicleState, ov: &VehicleState, params: &RiskFieldParams) -> f64 {
    let (kx, ky) = pseudo_delta(sv, ov, params);
    mathf::hypot(kx, ky)
}

/// Kinetic field strength emitted by `sv` at the position of `ov`.
///
/// Magnitude is `T_A · m_A · speed_term(v_A) · λ · e^(−β₁·a_A·cos α) / |k'|`,
/// directed along the pseudo-coordinate displacement.
pub fn kinetic_field_strength(
    sv: &VehicleState,
    ov: &VehicleState,
    params: &RiskFieldParams,
) -> Result<FieldForce, FieldError> {
    let (kx, ky) = pseudo_delta(sv, ov, params);
    let k_norm = mathf::hypot(kx, ky);
    if k_norm == 0.0 {
        return Err(FieldError::SingularPosition);
    }
    let r = (ov.position_x - sv.position_x, ov.position_y - sv.position_y);
    let cos_alpha = cos_between((1.0, 0.0), r);
    let magnitude = params.t_for(sv.vclass)
        * sv.mass
        * params.speed_term(sv.speed)
        * params.lambda_field
        * mathf::exp(-params.beta1 * sv.acceleration * cos_alpha)
        / k_norm;
    Ok(FieldForce::from_magnitude_dir(
        magnitude,
        kx / k_norm,
        ky / k_norm,
    ))
}

/// Field force exerted on `ov` by the field of `sv`.
///
/// Scales the field strength by the receiver's class weight and mass, the
/// shared speed factor, and an exponential in the velocity/acceleration gaps
/// projected through the pair angles.
pub fn field_force(
    sv: &VehicleState,
    ov: &VehicleState,
    params: &RiskFieldParams,
) -> Result<FieldForce, FieldError> {
    let strength = kinetic_field_strength(sv, ov, params)?;
    let cos_theta = cos_between(sv.velocity(), ov.velocity());
    let cos_gamma = cos_between(sv.accel_vector(), ov.accel_vector());
    let r = (ov.position_x - sv.position_x, ov.position_y - sv.position_y);
    let cos_alpha = cos_between((1.0, 0.0), r);

    let speed_v = if params.speed_term_from_ov {
        ov.speed
    } else {
        sv.speed
    };
    let motion_gap = params.beta2 * (ov.speed * cos_theta - sv.speed)
        + params.beta3 * (ov.acceleration * cos_gamma - sv.acceleration);
    let scale = params.t_for(ov.vclass)
        * ov.mass
        * params.speed_term(speed_v)
        * mathf::exp(-motion_gap * cos_alpha);

    Ok(FieldForce {
        fx: scale * strength.fx,
        fy: scale * strength.fy,
        magnitude: scale * strength.magnitude,
    })
}

/// Anticipated driving risk: the sum of field-force magnitudes exerted on
/// `ov` by every vehicle in `svs`.
pub fn adr(
    ov: &VehicleState,
    svs: &[VehicleState],
    params: &RiskFieldParams,
) -> Result<f64, FieldError> {
    let mut total = 0.0;
    for sv in svs {
        total += field_force(sv, ov, params)?.magnitude;
    }
    Ok(total)
}

/// Rectangular sampling grid: inclusive ranges walked in `step` increments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub step: f64,
}

impl GridSpec {
    fn axis(&self, range: (f64, f64)) -> Result<Vec<f64>, FieldError> {
        if !(self.step > 0.0) || range.1 < range.0 {
            return Err(FieldError::InvalidGrid);
        }
        let n = (mathf::floor((range.1 - range.0) / self.step + 1e-9) as usize) + 1;
        Ok((0..n).map(|i| range.0 + i as f64 * self.step).collect())
    }
}

/// Sampled force magnitudes: `values[iy][ix]` is the magnitude with the probe
/// at `(xs[ix], ys[iy])`; the emitter's own cell holds `f64::INFINITY`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl FieldGrid {
    /// Serializes the grid as `x,y,force` rows. Values carry at least nine
    /// significant digits; the singular cell serializes as `inf`.
    pub fn to_csv(&self) -> String {
        use core::fmt::Write;
        let mut out = String::from("x,y,force\n");
        for (iy, y) in self.ys.iter().enumerate() {
            for (ix, x) in self.xs.iter().enumerate() {
                let v = self.values[iy][ix];
                let _ = writeln!(out, "{:.9e},{:.9e},{:.9e}", x, y, v);
            }
        }
        out
    }
}

/// Evaluates the force magnitude of `sv`'s field on a probe vehicle placed at
/// every grid point. The probe template's position fields are ignored.
pub fn field_grid_export(
    sv: &VehicleState,
    params: &RiskFieldParams,
    grid: &GridSpec,
    probe: &VehicleState,
) -> Result<FieldGrid, FieldError> {
    let xs = grid.axis(grid.x_range)?;
    let ys = grid.axis(grid.y_range)?;
    let mut values = Vec::with_capacity(ys.len());
    for &y in &ys {
        let mut row = Vec::with_capacity(xs.len());
        for &x in &xs {
            let mut ov = *probe;
            ov.position_x = x;
            ov.position_y = y;
            match field_force(sv, &ov, params) {
                Ok(force) => row.push(force.magnitude),
                Err(FieldError::SingularPosition) => row.push(f64::INFINITY),
                Err(e) => return Err(e),
            }
        }
        values.push(row);
    }
    Ok(FieldGrid { xs, ys, values })
}
