//! Interference phases and the critical current of a flux-threaded junction loop.
//!
//! All quantities are in gaussian/natural units; no unit conversion happens here.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// How the Josephson cosine argument is normalized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FluxNormalization {
    /// `pi * phi1 * phi2 / phi0`
    #[default]
    Fluxoid,
    /// `pi * phi1 * phi2 / phi0^2`, which makes the argument dimensionless.
    FluxoidSquared,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxConfig {
    pub phi1: f64,
    pub phi2: f64,
    /// Fluxoid.
    pub phi0: f64,
    /// Junction current amplitude.
    pub j0: f64,
    /// Coupling `e / (hbar c)`.
    pub kappa: f64,
    /// Integer coefficient of the higher-order linkage between the path and the two fluxes.
    pub topo_coeff: i64,
    #[serde(default)]
    pub normalization: FluxNormalization,
}

impl Default for FluxConfig {
    fn default() -> Self {
        FluxConfig {
            phi1: 0.0,
            phi2: 0.0,
            phi0: 1.0,
            j0: 1.0,
            kappa: 1.0,
            topo_coeff: 1,
            normalization: FluxNormalization::Fluxoid,
        }
    }
}

/// Phase picked up by a charge whose closed path links the first flux tube
/// `linking` times: `kappa * linking * phi1`.
pub fn ab_phase_first_order(cfg: &FluxConfig, linking: i64) -> f64 {
    cfg.kappa * linking as f64 * cfg.phi1
}

/// Phase from a path that is pairwise unlinked from both flux tubes but
/// entangled with them as a whole: `topo_coeff * kappa^2 * phi1 * phi2`.
pub fn ab_phase_second_order(cfg: &FluxConfig) -> f64 {
    cfg.topo_coeff as f64 * cfg.kappa * cfg.kappa * cfg.phi1 * cfg.phi2
}

/// Maximum supercurrent `j0 * |cos(pi * phi1 * phi2 / phi0)|`.
pub fn josephson_max_current(cfg: &FluxConfig) -> Result<f64> {
    if !(cfg.phi0 > 0.0) {
        return Err(invalid(format!("fluxoid must be positive, got {}", cfg.phi0)));
    }
    if !(cfg.j0 >= 0.0) {
        return Err(invalid(format!("junction amplitude must be non-negative, got {}", cfg.j0)));
    }
    let denom = match cfg.normalization {
        FluxNormalization::Fluxoid => cfg.phi0,
        FluxNormalization::FluxoidSquared => cfg.phi0 * cfg.phi0,
    };
    let x = cfg.phi1 * cfg.phi2 / denom;
    Ok(cfg.j0 * cos_pi(x).abs())
}

/// `cos(pi x)` with exact zeros at half-integers and exact `+-1` at integers.
fn cos_pi(x: f64) -> f64 {
    // reduce to [-1, 1] exactly; fmod is exact in IEEE arithmetic
    let r = x % 2.0;
    let r = r.abs();
    let r = if r > 1.0 { 2.0 - r } else { r };
    if r == 0.5 {
        0.0
    } else if r == 0.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else if r < 0.5 {
        (PI * r).cos()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}
