//! Oriented-rectangle overlap tests for vehicle footprints.

use crate::mathf;
use crate::riskfield::VehicleState;

/// Heading-aligned rectangular footprint.
#[derive(Clone, Copy, Debug)]
pub struct Footprint {
    pub cx: f64,
    pub cy: f64,
    /// Unit vector along the vehicle axis.
    pub ux: f64,
    pub uy: f64,
    pub half_length: f64,
    pub half_width: f64,
}

impl Footprint {
    pub fn of(v: &VehicleState) -> Self {
        Footprint {
            cx: v.position_x,
            cy: v.position_y,
            ux: mathf::cos(v.heading),
            uy: mathf::sin(v.heading),
            half_length: v.length / 2.0,
            half_width: v.width / 2.0,
        }
    }

    /// Radius of the footprint's bounding circle.
    pub fn reach(&self) -> f64 {
        mathf::hypot(self.half_length, self.half_width)
    }

    /// Half-extent of the footprint projected on a unit axis.
    fn projected_extent(&self, ax: f64, ay: f64) -> f64 {
        let along = self.ux * ax + self.uy * ay;
        let across = -self.uy * ax + self.ux * ay;
        self.half_length * mathf::abs(along) + self.half_width * mathf::abs(across)
    }
}

/// Strict overlap via the separating-axis test: projections must overlap
/// with positive depth on all four candidate axes, so touching edges do not
/// count as a collision.
pub fn footprints_overlap(a: &Footprint, b: &Footprint) -> bool {
    let dx = b.cx - a.cx;
    let dy = b.cy - a.cy;
    let axes = [
        (a.ux, a.uy),
        (-a.uy, a.ux),
        (b.ux, b.uy),
        (-b.uy, b.ux),
    ];
    for (ax, ay) in axes {
        let dist = mathf::abs(dx * ax + dy * ay);
        let extent = a.projected_extent(ax, ay) + b.projected_extent(ax, ay);
        if dist >= extent {
            return false;
        }
    }
    true
}
