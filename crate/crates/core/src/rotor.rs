//! Rigid-rotor levels of spinning tubes treated as symmetric tops.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::inertia::{InertiaResult, Provenance, EXACT_DEGENERACY_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopKind {
    Spherical,
    ProlateSymmetric,
    OblateSymmetric,
    Asymmetric,
}

impl std::fmt::Display for TopKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TopKind::Spherical => "spherical",
            TopKind::ProlateSymmetric => "prolate-symmetric",
            TopKind::OblateSymmetric => "oblate-symmetric",
            TopKind::Asymmetric => "asymmetric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopClassification {
    pub kind: TopKind,
    /// Principal moments, ascending.
    pub moments: [f64; 3],
    /// `(A, B, C)` with `X = hbar^2 / (2 I_X)`, so `A >= B >= C`.
    pub rotational_constants: [f64; 3],
    pub hbar: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotorLevel {
    pub j: u32,
    pub k: i32,
    pub energy: f64,
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs())
}

/// Classify a rigid body by the degeneracy pattern of its principal moments,
/// with `hbar = 1`.
pub fn classify_top(moments: [f64; 3], tol: f64) -> Result<TopClassification> {
    classify_top_with_hbar(moments, tol, 1.0)
}

pub fn classify_top_with_hbar(moments: [f64; 3], tol: f64, hbar: f64) -> Result<TopClassification> {
    if let Some(m) = moments.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(invalid(format!("principal moments must be positive, got {m}")));
    }
    if !(tol >= 0.0) {
        return Err(invalid(format!("tolerance must be non-negative, got {tol}")));
    }
    if !(hbar > 0.0) {
        return Err(invalid(format!("hbar must be positive, got {hbar}")));
    }
    let mut m = moments;
    m.sort_by(f64::total_cmp);
    let [i1, i2, i3] = m;
    let kind = if close(i1, i3, tol) {
        TopKind::Spherical
    } else if close(i2, i3, tol) {
        TopKind::ProlateSymmetric
    } else if close(i1, i2, tol) {
        TopKind::OblateSymmetric
    } else {
        TopKind::Asymmetric
    };
    let h2 = hbar * hbar;
    Ok(TopClassification {
        kind,
        moments: m,
        rotational_constants: m.map(|i| h2 / (2.0 * i)),
        hbar,
    })
}

/// Relative tolerance for "equal moments": fixed for exact tensors, three
/// combined standard errors of the diagonal entries for Monte Carlo ones.
pub fn degeneracy_tolerance(result: &InertiaResult) -> f64 {
    match &result.provenance {
        Provenance::Exact => EXACT_DEGENERACY_TOLERANCE,
        Provenance::MonteCarlo { stderr, .. } => {
            let se = (0..3).map(|i| stderr[(i, i)]).fold(0.0, f64::max);
            3.0 * std::f64::consts::SQRT_2 * se / result.principal_moments[2]
        }
    }
}

pub fn classify_inertia(result: &InertiaResult) -> Result<TopClassification> {
    classify_top(result.principal_moments, degeneracy_tolerance(result))
}

/// Energy of level `(j, k)`. `k` is ignored for spherical tops.
pub fn symmetric_top_energy(cls: &TopClassification, j: u32, k: i32) -> Result<f64> {
    let [a, b, c] = cls.rotational_constants;
    let jj = j as f64 * (j as f64 + 1.0);
    let k2 = (k as f64).powi(2);
    match cls.kind {
        TopKind::Spherical => Ok(b * jj),
        TopKind::ProlateSymmetric => Ok(b * jj + (a - b) * k2),
        TopKind::OblateSymmetric => Ok(b * jj + (c - b) * k2),
        TopKind::Asymmetric => Err(Error::UnsupportedClassification(cls.kind.to_string())),
    }
}

/// All levels with `0 <= J <= j_max` and `|K| <= J`, sorted by energy, then `J`, then `K`.
pub fn symmetric_top_levels(cls: &TopClassification, j_max: u32) -> Result<Vec<RotorLevel>> {
    if cls.kind == TopKind::Asymmetric {
        return Err(Error::UnsupportedClassification(cls.kind.to_string()));
    }
    let mut levels = Vec::new();
    for j in 0..=j_max {
        let ji = j as i32;
        for k in -ji..=ji {
            levels.push(RotorLevel {
                j,
                k,
                energy: symmetric_top_energy(cls, j, k)?,
            });
        }
    }
    levels.sort_by(|x, y| {
        x.energy
            .total_cmp(&y.energy)
            .then(x.j.cmp(&y.j))
            .then(x.k.cmp(&y.k))
    });
    Ok(levels)
}
