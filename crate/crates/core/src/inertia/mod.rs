//! Mass, center of mass and inertia tensors of solid tubes.
//!
//! Round-ring configurations have closed forms (solid tori combined with the
//! parallel-axis theorem); arbitrary tubes go through [`mc_inertia`].

mod monte_carlo;
mod principal;

pub use monte_carlo::{mc_inertia, McConfig, DEFAULT_CHUNKS};
pub use principal::principal_axes;

use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::curves::chain_layout;
use crate::error::{invalid, Result};
use crate::geom::{Point, Vector};

/// Relative gap below which two exact principal moments count as equal.
pub const EXACT_DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Solid torus of uniform density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolidTorusSpec {
    #[serde(with = "crate::serde_util::point")]
    pub center: Point,
    /// Symmetry axis; normalized on use.
    #[serde(with = "crate::serde_util::vector")]
    pub axis: Vector,
    pub major_radius: f64,
    pub minor_radius: f64,
    #[serde(default = "unit_density")]
    pub density: f64,
}

fn unit_density() -> f64 {
    1.0
}

impl SolidTorusSpec {
    pub fn new(center: Point, axis: Vector, major_radius: f64, minor_radius: f64, density: f64) -> Result<Self> {
        let spec = SolidTorusSpec {
            center,
            axis,
            major_radius,
            minor_radius,
            density,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let (r, a) = (self.major_radius, self.minor_radius);
        if !(a > 0.0 && r > a && r.is_finite()) {
            return Err(invalid(format!(
                "torus radii must satisfy major > minor > 0, got major {r} and minor {a}"
            )));
        }
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(invalid(format!("density must be positive, got {}", self.density)));
        }
        let n = self.axis.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(invalid("torus axis must be a nonzero finite vector"));
        }
        if !self.center.coords.iter().all(|c| c.is_finite()) {
            return Err(invalid("torus center must be finite"));
        }
        Ok(())
    }

    pub fn unit_axis(&self) -> Vector {
        self.axis.normalize()
    }

    pub fn mass(&self) -> f64 {
        2.0 * PI * PI * self.major_radius * self.minor_radius.powi(2) * self.density
    }

    /// Moments about the symmetry axis and about a diameter, through the center.
    pub fn axial_and_diametral(&self) -> (f64, f64) {
        let m = self.mass();
        let (r2, a2) = (self.major_radius.powi(2), self.minor_radius.powi(2));
        (m * (r2 + 0.75 * a2), m * (0.5 * r2 + 0.625 * a2))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    MonteCarlo {
        seed: u64,
        samples: u64,
        chunks: u32,
        accepted: u64,
        /// Standard error of each tensor entry, estimated from the spread across chunks.
        #[serde(with = "crate::serde_util::matrix")]
        stderr: Matrix3<f64>,
        mass_stderr: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InertiaResult {
    pub mass: f64,
    #[serde(with = "crate::serde_util::point")]
    pub com: Point,
    /// Inertia tensor about the center of mass.
    #[serde(with = "crate::serde_util::matrix")]
    pub tensor: Matrix3<f64>,
    /// Ascending.
    pub principal_moments: [f64; 3],
    /// Principal axes as columns, matching `principal_moments`.
    #[serde(with = "crate::serde_util::matrix")]
    pub principal_axes: Matrix3<f64>,
    pub provenance: Provenance,
}

impl InertiaResult {
    pub(crate) fn from_tensor(mass: f64, com: Point, tensor: Matrix3<f64>, provenance: Provenance) -> Result<Self> {
        let (principal_moments, principal_axes) = principal_axes(&tensor)?;
        Ok(InertiaResult {
            mass,
            com,
            tensor,
            principal_moments,
            principal_axes,
            provenance,
        })
    }

    /// Copy with tensor, principal moments and standard errors divided by `unit`.
    pub fn in_units_of(&self, unit: f64) -> InertiaResult {
        let mut out = self.clone();
        out.tensor /= unit;
        out.principal_moments = out.principal_moments.map(|m| m / unit);
        if let Provenance::MonteCarlo { stderr, .. } = &mut out.provenance {
            *stderr /= unit;
        }
        out
    }

    /// Whether the two largest principal moments agree within `rel_tol`
    /// (relative to the larger one).
    pub fn has_degenerate_pair(&self, rel_tol: f64) -> bool {
        let [i1, i2, i3] = self.principal_moments;
        (i3 - i2).abs() <= rel_tol * i3 || (i2 - i1).abs() <= rel_tol * i2
    }
}

/// The unit `pi^2 rho a^5` in which round-ring tensors come out rational.
pub fn pi2_rho_a5(density: f64, tube_radius: f64) -> f64 {
    PI * PI * density * tube_radius.powi(5)
}

/// Inertia of a single solid torus, with the tensor about its center.
pub fn torus_inertia(spec: &SolidTorusSpec) -> Result<InertiaResult> {
    spec.validate()?;
    let (axial, diametral) = spec.axial_and_diametral();
    let n = spec.unit_axis();
    let tensor = Matrix3::identity() * diametral + n * n.transpose() * (axial - diametral);
    InertiaResult::from_tensor(spec.mass(), spec.center, tensor, Provenance::Exact)
}

/// `M (|d|^2 I - d d^T)`: the parallel-axis shift for mass `m` displaced by `d`.
pub fn parallel_axis_shift(mass: f64, d: &Vector) -> Matrix3<f64> {
    (Matrix3::identity() * d.norm_squared() - d * d.transpose()) * mass
}

/// Combined inertia of non-overlapping solid tori about their common center of mass.
pub fn composite_inertia(tori: &[SolidTorusSpec]) -> Result<InertiaResult> {
    if tori.is_empty() {
        return Err(invalid("composite needs at least one torus"));
    }
    for t in tori {
        t.validate()?;
    }
    check_overlaps(tori)?;

    let mass: f64 = tori.iter().map(SolidTorusSpec::mass).sum();
    let com = Point::from(
        tori.iter()
            .map(|t| t.center.coords * t.mass())
            .sum::<Vector>()
            / mass,
    );
    let mut tensor = Matrix3::zeros();
    for t in tori {
        let own = torus_inertia(t)?;
        tensor += own.tensor + parallel_axis_shift(own.mass, &(t.center - com));
    }
    InertiaResult::from_tensor(mass, com, tensor, Provenance::Exact)
}

fn check_overlaps(tori: &[SolidTorusSpec]) -> Result<()> {
    let scale = tori
        .iter()
        .map(|t| t.center.coords.norm() + t.major_radius + t.minor_radius)
        .fold(0.0, f64::max);
    let tol = 1e-9 * scale;
    for i in 0..tori.len() {
        for j in (i + 1)..tori.len() {
            let (a, b) = (&tori[i], &tori[j]);
            let clearance = a.minor_radius + b.minor_radius;
            let d = circle_circle_distance(a, b);
            if d < clearance - tol {
                return Err(invalid(format!(
                    "tori {i} and {j} overlap: centerlines come within {d} of each other, below the tube clearance {clearance}"
                )));
            }
        }
    }
    Ok(())
}

fn point_circle_distance(p: &Point, torus: &SolidTorusSpec) -> f64 {
    let n = torus.unit_axis();
    let v = p - torus.center;
    let h = v.dot(&n);
    let rho = (v - n * h).norm();
    ((rho - torus.major_radius).powi(2) + h * h).sqrt()
}

/// Minimum distance between the center circles of two tori.
///
/// A dense parametric scan of the first circle brackets every local minimum
/// of the exact point-to-circle distance, then golden-section search refines
/// each bracket.
pub(crate) fn circle_circle_distance(a: &SolidTorusSpec, b: &SolidTorusSpec) -> f64 {
    const SCAN: usize = 1024;
    let (u, v) = crate::geom::plane_basis(&a.unit_axis());
    let at = |t: f64| a.center + (u * t.cos() + v * t.sin()) * a.major_radius;
    let f = |t: f64| point_circle_distance(&at(t), b);

    let step = 2.0 * PI / SCAN as f64;
    let samples: Vec<f64> = (0..SCAN).map(|k| f(k as f64 * step)).collect();
    let mut best = samples.iter().copied().fold(f64::INFINITY, f64::min);
    for k in 0..SCAN {
        let prev = samples[(k + SCAN - 1) % SCAN];
        let next = samples[(k + 1) % SCAN];
        // a flat bracket (equidistant circles) cannot hide a deeper minimum
        let flat = prev.max(next) - samples[k] <= 1e-12 * (samples[k] + a.major_radius);
        if samples[k] <= prev && samples[k] <= next && !flat {
            let t0 = k as f64 * step;
            best = best.min(golden_min(&f, t0 - step, t0 + step));
        }
    }
    best
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Solid tori matching the rings of [`crate::curves::make_chain`] with `k` rings.
pub fn chain_tori(k: usize, a: f64, density: f64) -> Result<Vec<SolidTorusSpec>> {
    if k < 2 {
        return Err(invalid(format!("a chain needs at least 2 rings, got {k}")));
    }
    let (radius, spacing) = chain_layout(k, a);
    let offset = 0.5 * spacing * (k - 1) as f64;
    (0..k)
        .map(|i| {
            let axis = if i % 2 == 0 { Vector::z() } else { Vector::y() };
            SolidTorusSpec::new(
                Point::new(i as f64 * spacing - offset, 0.0, 0.0),
                axis,
                radius,
                a,
                density,
            )
        })
        .collect()
}

/// Solid tori of the tight Hopf link produced by [`crate::curves::make_tight_hopf`].
pub fn hopf_tori(a: f64, density: f64) -> Result<Vec<SolidTorusSpec>> {
    chain_tori(2, a, density)
}
