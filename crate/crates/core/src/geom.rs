//! Small vector-geometry helpers shared by the curve, linking and inertia code.

use nalgebra::{Point3, Vector3};

pub type Point = Point3<f64>;
pub type Vector = Vector3<f64>;

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let mut iter = points.into_iter();
        let first = *iter.next()?;
        let mut bb = Aabb {
            min: first,
            max: first,
        };
        for p in iter {
            bb.include(p);
        }
        Some(bb)
    }

    pub fn include(&mut self, p: &Point) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    pub fn union(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.inf(&other.min),
            max: self.max.sup(&other.max),
        }
    }

    pub fn inflated(&self, by: f64) -> Aabb {
        let d = Vector::repeat(by);
        Aabb {
            min: self.min - d,
            max: self.max + d,
        }
    }

    pub fn extent(&self) -> Vector {
        self.max - self.min
    }

    pub fn diagonal(&self) -> f64 {
        self.extent().norm()
    }

    pub fn volume(&self) -> f64 {
        let e = self.extent();
        e.x * e.y * e.z
    }

    pub fn center(&self) -> Point {
        nalgebra::center(&self.min, &self.max)
    }
}

/// Squared distance from `p` to the closed segment `[a, b]`.
#[inline]
pub fn point_segment_distance_sq(p: &Point, a: &Point, b: &Point) -> f64 {
    let ab = b - a;
    let ap = p - a;
    let len_sq = ab.norm_squared();
    let t = if len_sq > 0.0 {
        (ap.dot(&ab) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (ap - ab * t).norm_squared()
}

#[inline]
pub fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> f64 {
    point_segment_distance_sq(p, a, b).sqrt()
}

/// Minimum distance between the closed segments `[p1, q1]` and `[p2, q2]`.
///
/// Closest-point parameters are found by clamping the unconstrained solution
/// of the 2x2 normal equations, re-clamping the other parameter after each
/// clamp.
pub fn segment_segment_distance(p1: &Point, q1: &Point, p2: &Point, q2: &Point) -> f64 {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(&r);
    let eps = f64::EPSILON * (a + e).max(f64::MIN_POSITIVE);

    let (s, t) = if a <= eps && e <= eps {
        (0.0, 0.0)
    } else if a <= eps {
        (0.0, (f / e).clamp(0.0, 1.0))
    } else {
        let c = d1.dot(&r);
        if e <= eps {
            ((-c / a).clamp(0.0, 1.0), 0.0)
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s = if denom > eps * (a * e).sqrt() {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t = (b * s + f) / e;
            if t < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            }
            (s, t)
        }
    };
    let c1 = p1 + d1 * s;
    let c2 = p2 + d2 * t;
    (c1 - c2).norm()
}

/// Unit vectors `(u, v)` spanning the plane orthogonal to the unit vector `n`,
/// with `u x v = n`. `u` is built from the coordinate axis least aligned with `n`.
pub fn plane_basis(n: &Vector) -> (Vector, Vector) {
    let abs = n.abs();
    let helper = if abs.x <= abs.y && abs.x <= abs.z {
        Vector::x()
    } else if abs.y <= abs.z {
        Vector::y()
    } else {
        Vector::z()
    };
    let u = (helper - n * helper.dot(n)).normalize();
    let v = n.cross(&u);
    (u, v)
}
