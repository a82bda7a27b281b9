use std::f64::consts::PI;

use super::{Component, Link};
use crate::error::{invalid, Result};
use crate::geom::{plane_basis, Point, Vector};

/// Vertex count used for circles and ellipses when the caller has no preference.
pub const DEFAULT_VERTICES: usize = 512;

/// Regular `n_vertices`-gon inscribed in the circle with the given center,
/// normal and radius, traversed counterclockwise about `normal`.
pub fn make_circle(center: Point, normal: Vector, radius: f64, n_vertices: usize) -> Result<Component> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid(format!("circle radius must be positive, got {radius}")));
    }
    if n_vertices < 3 {
        return Err(invalid(format!("a circle needs at least 3 vertices, got {n_vertices}")));
    }
    let norm = normal.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(invalid("circle normal must be a nonzero finite vector"));
    }
    let (u, v) = plane_basis(&(normal / norm));
    let vertices = (0..n_vertices)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n_vertices as f64;
            center + (u * t.cos() + v * t.sin()) * radius
        })
        .collect();
    Component::new(vertices)
}

/// Two round rings of radius `2a` in perpendicular planes, each passing through
/// the other's center, with tube radius `a` and unit density.
///
/// Ring A lies in the xy-plane centered at `(-a, 0, 0)`; ring B lies in the
/// xz-plane centered at `(a, 0, 0)`. Every point of one centerline is exactly
/// `2a` from the other, so the tubes touch along a curve.
pub fn make_tight_hopf(a: f64, n_vertices: usize) -> Result<Link> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid(format!("tube radius must be positive, got {a}")));
    }
    let ring_a = make_circle(Point::new(-a, 0.0, 0.0), Vector::z(), 2.0 * a, n_vertices)?;
    let ring_b = make_circle(Point::new(a, 0.0, 0.0), Vector::y(), 2.0 * a, n_vertices)?;
    Link::new(vec![ring_a, ring_b], a, 1.0)
}

/// Ring radius and center spacing of the straight chain of `k` round rings.
///
/// Two rings are the tight Hopf link. From three rings on, the rings `i` and
/// `i + 2` share a plane, and the tightest round-ring layout keeping every
/// pair of tubes disjoint has ring radius `3a` and spacing `4a`.
pub fn chain_layout(k: usize, a: f64) -> (f64, f64) {
    if k <= 2 {
        (2.0 * a, 2.0 * a)
    } else {
        (3.0 * a, 4.0 * a)
    }
}

/// Straight chain of `k` round rings along the x-axis, alternating between the
/// xy-plane and the xz-plane, centered on the origin.
pub fn make_chain(k: usize, a: f64, n_vertices: usize) -> Result<Link> {
    if k < 2 {
        return Err(invalid(format!("a chain needs at least 2 rings, got {k}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid(format!("tube radius must be positive, got {a}")));
    }
    let (radius, spacing) = chain_layout(k, a);
    let offset = 0.5 * spacing * (k - 1) as f64;
    let rings = (0..k)
        .map(|i| {
            let center = Point::new(i as f64 * spacing - offset, 0.0, 0.0);
            let normal = if i % 2 == 0 { Vector::z() } else { Vector::y() };
            make_circle(center, normal, radius, n_vertices)
        })
        .collect::<Result<Vec<_>>>()?;
    Link::new(rings, a, 1.0)
}

/// Borromean rings from three congruent ellipses with semi-axes `(r1, r2)`, one
/// per coordinate plane with the axes cyclically permuted. Tube radius is
/// `0.1 * min(r1, r2)`.
pub fn make_borromean(r1: f64, r2: f64, n_vertices: usize) -> Result<Link> {
    if !(r1 > 0.0 && r2 > 0.0 && r1.is_finite() && r2.is_finite()) {
        return Err(invalid(format!("ellipse semi-axes must be positive, got {r1} and {r2}")));
    }
    if r1 == r2 {
        return Err(invalid(
            "Borromean rings cannot be realized by three round circles; semi-axes r1 and r2 must differ",
        ));
    }
    if n_vertices < 3 {
        return Err(invalid(format!("an ellipse needs at least 3 vertices, got {n_vertices}")));
    }
    let ellipse = |f: &dyn Fn(f64, f64) -> Point| -> Result<Component> {
        let vertices = (0..n_vertices)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n_vertices as f64;
                f(r1 * t.cos(), r2 * t.sin())
            })
            .collect();
        Component::new(vertices)
    };
    let xy = ellipse(&|c, s| Point::new(c, s, 0.0))?;
    let yz = ellipse(&|c, s| Point::new(0.0, c, s))?;
    let zx = ellipse(&|c, s| Point::new(s, 0.0, c))?;
    Link::new(vec![xy, yz, zx], 0.1 * r1.min(r2), 1.0)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The `(p, q)` torus knot or link on a torus of radii `(major, minor)` about the z-axis.
///
/// With `d = gcd(p, q)` there are `d` components, each winding `p/d` times in
/// longitude and `q/d` times in meridian, as parallel copies on the torus.
pub fn make_torus_link(
    p: usize,
    q: usize,
    major: f64,
    minor: f64,
    tube_radius: f64,
    n_vertices: usize,
) -> Result<Link> {
    if p == 0 || q == 0 {
        return Err(invalid("torus link winding numbers must be positive"));
    }
    if !(major > minor && minor > 0.0) {
        return Err(invalid(format!(
            "torus radii must satisfy major > minor > 0, got {major} and {minor}"
        )));
    }
    let d = gcd(p, q);
    let (pl, ql) = ((p / d) as f64, (q / d) as f64);
    let components = (0..d)
        .map(|j| {
            let shift = 2.0 * PI * j as f64 / (d as f64 * pl);
            let vertices = (0..n_vertices)
                .map(|k| {
                    let s = 2.0 * PI * k as f64 / n_vertices as f64;
                    let (lon, mer) = (pl * s, ql * s + shift);
                    let rho = major + minor * mer.cos();
                    Point::new(rho * lon.cos(), rho * lon.sin(), minor * mer.sin())
                })
                .collect();
            Component::new(vertices)
        })
        .collect::<Result<Vec<_>>>()?;
    Link::new(components, tube_radius, 1.0)
}
