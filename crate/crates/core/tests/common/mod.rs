#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{Isometry3, Translation3, UnitQuaternion, Vector3};
use tightknot::{Component, Point};

/// Gauss integral of two smooth closed curves by the periodic trapezoid rule.
/// Curves are given as position and derivative functions on `[0, 2 pi)`.
pub fn gauss_quadrature(
    r1: impl Fn(f64) -> (Vector3<f64>, Vector3<f64>),
    r2: impl Fn(f64) -> (Vector3<f64>, Vector3<f64>),
    n: usize,
) -> f64 {
    let h = 2.0 * PI / n as f64;
    let b: Vec<_> = (0..n).map(|j| r2(j as f64 * h)).collect();
    let mut total = 0.0;
    for i in 0..n {
        let (x, dx) = r1(i as f64 * h);
        for (y, dy) in &b {
            let d = x - y;
            total += d.dot(&dx.cross(dy)) / d.norm().powi(3);
        }
    }
    total * h * h / (4.0 * PI)
}

/// Signed crossing count of the xy-projection, halved. The strand with larger
/// z at the crossing is the over strand; a crossing is positive when
/// `(d_over x d_under)_z > 0`.
pub fn projected_crossing_linking(c1: &Component, c2: &Component) -> f64 {
    let mut sum = 0i64;
    for (p1, q1) in c1.segments() {
        for (p2, q2) in c2.segments() {
            let d1 = q1 - p1;
            let d2 = q2 - p2;
            let denom = d1.x * d2.y - d1.y * d2.x;
            if denom == 0.0 {
                continue;
            }
            let w = p2 - p1;
            let s = (w.x * d2.y - w.y * d2.x) / denom;
            let t = (w.x * d1.y - w.y * d1.x) / denom;
            if !(0.0..1.0).contains(&s) || !(0.0..1.0).contains(&t) {
                continue;
            }
            let z1 = p1.z + s * d1.z;
            let z2 = p2.z + t * d2.z;
            let (over, under) = if z1 > z2 { (d1, d2) } else { (d2, d1) };
            let cross = over.x * under.y - over.y * under.x;
            sum += if cross > 0.0 { 1 } else { -1 };
        }
    }
    sum as f64 / 2.0
}

/// Deterministic rigid motion from a small integer key.
pub fn rigid_motion(key: u64) -> Isometry3<f64> {
    let k = key as f64;
    let axis = Vector3::new((k * 1.3).sin(), (k * 0.7).cos(), 0.3 + (k * 2.1).sin()).normalize();
    let rot = UnitQuaternion::from_axis_angle(&nalgebra::Unit::new_normalize(axis), 0.4 + k);
    Isometry3::from_parts(Translation3::new(k.sin() * 5.0, -3.0 + k.cos(), 2.0 * k.sin()), rot)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

pub fn point(x: f64, y: f64, z: f64) -> Point {
    Point::new(x, y, z)
}
