//! Gauss linking numbers of closed polygons.
//!
//! For a segment pair the Gauss double integral equals the solid angle that
//! the parallelogram `{q - p : p on the first segment, q on the second}`
//! subtends at the origin, divided by `4 pi`. The parallelogram is split into
//! two triangles whose signed solid angles have a closed form, so the sum is
//! exact for polygons up to floating-point rounding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curves::Component;
use crate::error::{Error, Result};
use crate::geom::{segment_segment_distance, Vector};

/// Residual above which a linking number is flagged as not integral.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;

/// Relative separation below which two curves count as touching.
pub const TOUCHING_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkingResult {
    /// Gauss double integral divided by `4 pi`.
    pub raw: f64,
    pub rounded: i64,
    /// `|raw - rounded|`
    pub residual: f64,
    /// Set when the residual exceeds [`INTEGRALITY_TOLERANCE`].
    pub flagged: bool,
}

impl LinkingResult {
    fn from_raw(raw: f64) -> Self {
        let rounded = raw.round();
        let residual = (raw - rounded).abs();
        LinkingResult {
            raw,
            rounded: rounded as i64,
            residual,
            flagged: residual >= INTEGRALITY_TOLERANCE,
        }
    }
}

/// Signed solid angle of the triangle `(a, b, c)` seen from the origin.
#[inline]
fn triangle_solid_angle(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let (la, lb, lc) = (a.norm(), b.norm(), c.norm());
    let num = a.dot(&b.cross(c));
    let den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    2.0 * num.atan2(den)
}

/// Contribution of the segment pair `[p1, q1]`, `[p2, q2]` to the Gauss
/// integral, as a solid angle (not yet divided by `4 pi`).
#[inline]
pub fn segment_pair_solid_angle(
    p1: &crate::geom::Point,
    q1: &crate::geom::Point,
    p2: &crate::geom::Point,
    q2: &crate::geom::Point,
) -> f64 {
    let v0 = p2 - p1;
    let v1 = p2 - q1;
    let v2 = q2 - q1;
    let v3 = q2 - p1;
    triangle_solid_angle(&v0, &v1, &v2) + triangle_solid_angle(&v0, &v2, &v3)
}

/// Gauss linking number of two disjoint closed polygons.
pub fn gauss_linking(c1: &Component, c2: &Component) -> Result<LinkingResult> {
    let scale = c1.bounding_box().union(&c2.bounding_box()).diagonal();
    let touch = TOUCHING_THRESHOLD * scale;
    let segs2: Vec<_> = c2.segments().collect();

    let mut total = 0.0;
    for (i, (p1, q1)) in c1.segments().enumerate() {
        let mut row = 0.0;
        for (j, (p2, q2)) in segs2.iter().enumerate() {
            let d = segment_segment_distance(&p1, &q1, p2, q2);
            if d <= touch {
                return Err(Error::GeometricDegeneracy {
                    segment_a: i,
                    segment_b: j,
                    distance: d,
                });
            }
            row += segment_pair_solid_angle(&p1, &q1, p2, q2);
        }
        total += row;
    }
    let result = LinkingResult::from_raw(total / (4.0 * PI));
    if result.flagged {
        log::warn!(
            "linking number {} is {:.3e} away from the nearest integer",
            result.raw,
            result.residual
        );
    }
    Ok(result)
}
