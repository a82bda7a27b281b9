//! Closed polygonal centerlines, tube configurations and generators for the
//! canonical links (tight Hopf, straight chains, Borromean rings, torus links).

mod generators;
mod grid;

pub use generators::{
    chain_layout, make_borromean, make_chain, make_circle, make_tight_hopf, make_torus_link,
    DEFAULT_VERTICES,
};
pub use grid::{distance_to_link, SegmentGrid};

use std::f64::consts::PI;

use nalgebra::Isometry3;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geom::{segment_segment_distance, Aabb, Point};

/// A closed polygon. The edge from the last vertex back to the first is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    vertices: Vec<Point>,
}

impl Component {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(invalid(format!(
                "a closed component needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.coords.iter().all(|c| c.is_finite())) {
            return Err(invalid(format!("vertex {i} has a non-finite coordinate")));
        }
        let diag = Aabb::from_points(&vertices).map_or(0.0, |b| b.diagonal());
        let min_sep = 1e-12 * diag;
        let n = vertices.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if (vertices[j] - vertices[i]).norm() <= min_sep {
                return Err(invalid(format!(
                    "consecutive vertices {i} and {j} coincide"
                )));
            }
        }
        Ok(Component { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of edges, equal to the number of vertices.
    pub fn segment_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn segment(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.vertices.len()).map(move |i| self.segment(i))
    }

    pub fn arc_length(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).sum()
    }

    pub fn bounding_box(&self) -> Aabb {
        Aabb::from_points(&self.vertices).expect("component has vertices")
    }

    /// The same curve traversed in the opposite direction.
    pub fn reversed(&self) -> Component {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Component { vertices }
    }

    pub fn transformed(&self, iso: &Isometry3<f64>) -> Component {
        Component {
            vertices: self.vertices.iter().map(|v| iso * v).collect(),
        }
    }
}

/// A set of closed centerlines carrying a tube of common radius and uniform density.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    components: Vec<Component>,
    tube_radius: f64,
    density: f64,
}

/// Closest approach between two segments that violates the tube clearance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClearanceViolation {
    pub component_a: usize,
    pub segment_a: usize,
    pub component_b: usize,
    pub segment_b: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddednessReport {
    /// Smallest distance found between segment pairs that are subject to the check.
    pub min_distance: f64,
    pub required: f64,
    pub tolerance: f64,
    pub violations: Vec<ClearanceViolation>,
}

impl EmbeddednessReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Link {
    pub fn new(components: Vec<Component>, tube_radius: f64, density: f64) -> Result<Self> {
        if components.is_empty() {
            return Err(invalid("a link needs at least one component"));
        }
        if !(tube_radius > 0.0 && tube_radius.is_finite()) {
            return Err(invalid(format!("tube radius must be positive, got {tube_radius}")));
        }
        if !(density > 0.0 && density.is_finite()) {
            return Err(invalid(format!("density must be positive, got {density}")));
        }
        Ok(Link {
            components,
            tube_radius,
            density,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> Option<&Component> {
        self.components.get(i)
    }

    pub fn tube_radius(&self) -> f64 {
        self.tube_radius
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn with_density(mut self, density: f64) -> Result<Self> {
        if !(density > 0.0 && density.is_finite()) {
            return Err(invalid(format!("density must be positive, got {density}")));
        }
        self.density = density;
        Ok(self)
    }

    /// All centerline segments of all components, in component order.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.components.iter().flat_map(|c| c.segments())
    }

    pub fn segment_count(&self) -> usize {
        self.components.iter().map(Component::segment_count).sum()
    }

    pub fn arc_length(&self) -> f64 {
        self.components.iter().map(Component::arc_length).sum()
    }

    /// Bounding box of the centerlines (not inflated by the tube radius).
    pub fn bounding_box(&self) -> Aabb {
        self.components
            .iter()
            .map(Component::bounding_box)
            .reduce(|a, b| a.union(&b))
            .expect("link has components")
    }

    pub fn transformed(&self, iso: &Isometry3<f64>) -> Link {
        Link {
            components: self.components.iter().map(|c| c.transformed(iso)).collect(),
            tube_radius: self.tube_radius,
            density: self.density,
        }
    }

    /// Diagnostic clearance check: every pair of segments from different
    /// components, and every pair within a component that is more than
    /// `pi * a` apart along the curve, must be at least `2a - tolerance` apart.
    pub fn embeddedness(&self, tolerance: f64) -> EmbeddednessReport {
        let a = self.tube_radius;
        let required = 2.0 * a;
        let mut min_distance = f64::INFINITY;
        let mut violations = Vec::new();
        let mut check = |ci: usize, si: usize, cj: usize, sj: usize, d: f64| {
            min_distance = min_distance.min(d);
            if d < required - tolerance {
                violations.push(ClearanceViolation {
                    component_a: ci,
                    segment_a: si,
                    component_b: cj,
                    segment_b: sj,
                    distance: d,
                });
            }
        };

        for (ci, c) in self.components.iter().enumerate() {
            let segs: Vec<_> = c.segments().collect();
            // arc-length position of each segment start
            let mut starts = Vec::with_capacity(segs.len());
            let mut acc = 0.0;
            for (p, q) in &segs {
                starts.push(acc);
                acc += (q - p).norm();
            }
            let total = acc;
            for i in 0..segs.len() {
                for j in (i + 1)..segs.len() {
                    let len_i = (segs[i].1 - segs[i].0).norm();
                    let len_j = (segs[j].1 - segs[j].0).norm();
                    let forward = starts[j] - (starts[i] + len_i);
                    let backward = total - (starts[j] + len_j) + starts[i];
                    if forward.min(backward) < PI * a {
                        continue;
                    }
                    let d = segment_segment_distance(&segs[i].0, &segs[i].1, &segs[j].0, &segs[j].1);
                    check(ci, i, ci, j, d);
                }
            }
            for (cj, other) in self.components.iter().enumerate().skip(ci + 1) {
                for (si, (p1, q1)) in segs.iter().enumerate() {
                    for (sj, (p2, q2)) in other.segments().enumerate() {
                        check(ci, si, cj, sj, segment_segment_distance(p1, q1, &p2, &q2));
                    }
                }
            }
        }

        EmbeddednessReport {
            min_distance,
            required,
            tolerance,
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_or_degenerate_components() {
        assert!(Component::new(vec![Point::origin(), Point::new(1.0, 0.0, 0.0)]).is_err());
        let dup = vec![
            Point::origin(),
            Point::origin(),
            Point::new(1.0, 0.0, 0.0),
        ];
        assert!(Component::new(dup).is_err());
        let wrap = vec![
            Point::origin(),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 0.0, 0.0),
        ];
        assert!(Component::new(wrap).is_err());
    }

    #[test]
    fn rejects_bad_tube_parameters() {
        let c = make_circle(Point::origin(), crate::geom::Vector::z(), 1.0, 8).unwrap();
        assert!(Link::new(vec![c.clone()], 0.0, 1.0).is_err());
        assert!(Link::new(vec![c.clone()], 0.1, -1.0).is_err());
        assert!(Link::new(vec![], 0.1, 1.0).is_err());
        assert!(Link::new(vec![c], 0.1, 1.0).is_ok());
    }

    #[test]
    fn reversal_keeps_length() {
        let c = make_circle(Point::origin(), crate::geom::Vector::z(), 1.0, 17).unwrap();
        let r = c.reversed();
        assert!((c.arc_length() - r.arc_length()).abs() < 1e-14);
        assert_eq!(r.vertices()[0], c.vertices()[16]);
    }

    #[test]
    fn overlapping_rings_flagged() {
        let a = make_circle(Point::origin(), crate::geom::Vector::z(), 2.0, 64).unwrap();
        let b = make_circle(Point::new(1.0, 0.0, 0.0), crate::geom::Vector::z(), 2.0, 64).unwrap();
        let link = Link::new(vec![a, b], 1.0, 1.0).unwrap();
        let report = link.embeddedness(1e-6);
        assert!(!report.passes());
        assert_eq!(report.min_distance, 0.0);
    }
}
