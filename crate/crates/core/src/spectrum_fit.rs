//! Matching tight knot/link lengths to a measured mass spectrum with a single
//! scale factor, by weighted least squares.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotEntry {
    pub name: String,
    /// Ropelength in tube-radius units.
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateEntry {
    pub name: String,
    /// MeV.
    pub mass: f64,
    /// MeV.
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub state: String,
    pub knot: String,
    pub length: f64,
    pub mass: f64,
    pub sigma: f64,
}

impl Assignment {
    pub fn point(&self) -> FitPoint {
        FitPoint {
            length: self.length,
            energy: self.mass,
            sigma: self.sigma,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AssignMode {
    /// i-th lightest state with the i-th shortest knot.
    Ordered,
    /// State name to knot name.
    Explicit(BTreeMap<String, String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub length: f64,
    pub energy: f64,
    pub sigma: f64,
}

/// Proportional fit `E = lambda * L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub lambda: f64,
    pub lambda_stderr: f64,
    pub chi2: f64,
    pub dof: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assignments: Vec<Assignment>,
    /// `E - lambda * L`, in input order.
    pub residuals: Vec<f64>,
}

/// Affine fit `E = intercept + slope * L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFitResult {
    pub intercept: f64,
    pub slope: f64,
    pub intercept_stderr: f64,
    pub slope_stderr: f64,
    pub chi2: f64,
    pub dof: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assignments: Vec<Assignment>,
    pub residuals: Vec<f64>,
}

fn check_unique<'a>(what: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(invalid(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(())
}

fn validate_tables(knots: &[KnotEntry], states: &[StateEntry]) -> Result<()> {
    check_unique("knot", knots.iter().map(|k| k.name.as_str()))?;
    check_unique("state", states.iter().map(|s| s.name.as_str()))?;
    if let Some(k) = knots.iter().find(|k| !(k.length > 0.0 && k.length.is_finite())) {
        return Err(invalid(format!("knot {} has non-positive length {}", k.name, k.length)));
    }
    if let Some(s) = states.iter().find(|s| !(s.mass > 0.0 && s.mass.is_finite())) {
        return Err(invalid(format!("state {} has non-positive mass {}", s.name, s.mass)));
    }
    if let Some(s) = states.iter().find(|s| !(s.sigma > 0.0 && s.sigma.is_finite())) {
        return Err(invalid(format!("state {} has non-positive sigma {}", s.name, s.sigma)));
    }
    Ok(())
}

fn pair(state: &StateEntry, knot: &KnotEntry) -> Assignment {
    Assignment {
        state: state.name.clone(),
        knot: knot.name.clone(),
        length: knot.length,
        mass: state.mass,
        sigma: state.sigma,
    }
}

/// Pair states with knots. Ordered results are sorted by state mass; explicit
/// results follow the state table order.
pub fn assign(knots: &[KnotEntry], states: &[StateEntry], mode: &AssignMode) -> Result<Vec<Assignment>> {
    validate_tables(knots, states)?;
    match mode {
        AssignMode::Ordered => {
            if states.len() > knots.len() {
                return Err(invalid(format!(
                    "ordered assignment needs at least as many knots as states ({} knots, {} states)",
                    knots.len(),
                    states.len()
                )));
            }
            let mut s: Vec<&StateEntry> = states.iter().collect();
            let mut k: Vec<&KnotEntry> = knots.iter().collect();
            s.sort_by(|a, b| a.mass.total_cmp(&b.mass).then_with(|| a.name.cmp(&b.name)));
            k.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.name.cmp(&b.name)));
            Ok(s.into_iter().zip(k).map(|(s, k)| pair(s, k)).collect())
        }
        AssignMode::Explicit(map) => {
            let knot_by_name: BTreeMap<&str, &KnotEntry> = knots.iter().map(|k| (k.name.as_str(), k)).collect();
            let state_names: HashSet<&str> = states.iter().map(|s| s.name.as_str()).collect();
            let mut missing = Vec::new();
            for (state, knot) in map {
                if !state_names.contains(state.as_str()) {
                    missing.push(state.clone());
                }
                if !knot_by_name.contains_key(knot.as_str()) {
                    missing.push(knot.clone());
                }
            }
            for s in states {
                if !map.contains_key(&s.name) {
                    missing.push(s.name.clone());
                }
            }
            if !missing.is_empty() {
                missing.sort();
                missing.dedup();
                return Err(Error::Assignment { missing });
            }
            Ok(states
                .iter()
                .map(|s| pair(s, knot_by_name[map[&s.name].as_str()]))
                .collect())
        }
    }
}

fn validate_points(points: &[FitPoint], min: usize) -> Result<()> {
    if points.len() < min {
        return Err(Error::InsufficientData(format!(
            "need at least {min} pairs, got {}",
            points.len()
        )));
    }
    for p in points {
        if !(p.sigma > 0.0 && p.sigma.is_finite()) {
            return Err(invalid(format!("uncertainties must be positive, got {}", p.sigma)));
        }
        if !(p.length.is_finite() && p.energy.is_finite()) {
            return Err(invalid("lengths and energies must be finite"));
        }
    }
    Ok(())
}

/// Points in a canonical order, so that sums do not depend on input order.
fn canonical(points: &[FitPoint]) -> Vec<FitPoint> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then(a.energy.total_cmp(&b.energy))
            .then(a.sigma.total_cmp(&b.sigma))
    });
    sorted
}

/// Weighted least squares through the origin with weights `1 / sigma^2`:
/// `lambda = sum(w L E) / sum(w L^2)`.
pub fn fit_scale(points: &[FitPoint]) -> Result<FitResult> {
    validate_points(points, 2)?;
    let sorted = canonical(points);
    let (mut sle, mut sll) = (0.0, 0.0);
    for p in &sorted {
        let w = 1.0 / (p.sigma * p.sigma);
        sle += w * p.length * p.energy;
        sll += w * p.length * p.length;
    }
    if !(sll > 0.0) {
        return Err(Error::SingularFit("all lengths are zero".into()));
    }
    let lambda = sle / sll;
    let chi2 = sorted
        .iter()
        .map(|p| ((p.energy - lambda * p.length) / p.sigma).powi(2))
        .sum();
    Ok(FitResult {
        lambda,
        lambda_stderr: sll.sqrt().recip(),
        chi2,
        dof: points.len() - 1,
        assignments: Vec::new(),
        residuals: points.iter().map(|p| p.energy - lambda * p.length).collect(),
    })
}

/// Weighted straight-line fit `E = a + b L`, solved about the weighted mean length.
pub fn fit_affine(points: &[FitPoint]) -> Result<AffineFitResult> {
    validate_points(points, 3)?;
    let sorted = canonical(points);
    let weights: Vec<f64> = sorted.iter().map(|p| 1.0 / (p.sigma * p.sigma)).collect();
    let sw: f64 = weights.iter().sum();
    let mean_l = sorted.iter().zip(&weights).map(|(p, w)| w * p.length).sum::<f64>() / sw;
    let mean_e = sorted.iter().zip(&weights).map(|(p, w)| w * p.energy).sum::<f64>() / sw;
    let (mut stt, mut ste, mut sll) = (0.0, 0.0, 0.0);
    for (p, w) in sorted.iter().zip(&weights) {
        let t = p.length - mean_l;
        stt += w * t * t;
        ste += w * t * (p.energy - mean_e);
        sll += w * p.length * p.length;
    }
    if !(stt > 1e-24 * sll) {
        return Err(Error::SingularFit("all lengths are equal; slope is undetermined".into()));
    }
    let slope = ste / stt;
    let intercept = mean_e - slope * mean_l;
    let chi2 = sorted
        .iter()
        .map(|p| ((p.energy - intercept - slope * p.length) / p.sigma).powi(2))
        .sum();
    Ok(AffineFitResult {
        intercept,
        slope,
        intercept_stderr: (1.0 / sw + mean_l * mean_l / stt).sqrt(),
        slope_stderr: stt.sqrt().recip(),
        chi2,
        dof: points.len() - 2,
        assignments: Vec::new(),
        residuals: points
            .iter()
            .map(|p| p.energy - intercept - slope * p.length)
            .collect(),
    })
}

/// Proportional fit of assigned pairs, keeping the assignments in the result.
pub fn fit_assigned(assignments: Vec<Assignment>) -> Result<FitResult> {
    let points: Vec<FitPoint> = assignments.iter().map(Assignment::point).collect();
    let mut res = fit_scale(&points)?;
    res.assignments = assignments;
    Ok(res)
}

pub fn fit_assigned_affine(assignments: Vec<Assignment>) -> Result<AffineFitResult> {
    let points: Vec<FitPoint> = assignments.iter().map(Assignment::point).collect();
    let mut res = fit_affine(&points)?;
    res.assignments = assignments;
    Ok(res)
}

/// Rows `(L, E, lambda * L)` for plotting measured masses against the fitted line.
pub fn plot_rows(fit: &FitResult) -> Vec<(f64, f64, f64)> {
    fit.assignments
        .iter()
        .map(|a| (a.length, a.mass, fit.lambda * a.length))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[(f64, f64)], sigma: f64) -> Vec<FitPoint> {
        rows.iter()
            .map(|&(length, energy)| FitPoint { length, energy, sigma })
            .collect()
    }

    fn knot(name: &str, length: f64) -> KnotEntry {
        KnotEntry { name: name.into(), length }
    }

    fn state(name: &str, mass: f64) -> StateEntry {
        StateEntry { name: name.into(), mass, sigma: 1.0 }
    }

    #[test]
    fn proportional_data() {
        let r = fit_scale(&pts(&[(10.0, 5.0), (20.0, 10.0), (30.0, 15.0)], 1.0)).unwrap();
        assert_eq!(r.lambda, 0.5);
        assert_eq!(r.chi2, 0.0);
        assert_eq!(r.dof, 2);
    }

    #[test]
    fn noisy_data_closed_form() {
        let r = fit_scale(&pts(&[(10.0, 5.0), (20.0, 10.1), (30.0, 14.9)], 1.0)).unwrap();
        assert!((r.lambda - 699.0 / 1400.0).abs() < 1e-14);
    }

    #[test]
    fn doubling_sigma() {
        let rows = [(10.0, 5.0), (20.0, 10.1), (30.0, 14.9)];
        let a = fit_scale(&pts(&rows, 1.0)).unwrap();
        let b = fit_scale(&pts(&rows, 2.0)).unwrap();
        assert_eq!(a.lambda, b.lambda);
        assert!((a.chi2 / 4.0 - b.chi2).abs() < 1e-15 * a.chi2);
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(fit_scale(&pts(&[(1.0, 1.0)], 1.0)), Err(Error::InsufficientData(_))));
        assert!(matches!(
            fit_scale(&pts(&[(1.0, 1.0), (2.0, 2.0)], 0.0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            fit_affine(&pts(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)], 1.0)),
            Err(Error::SingularFit(_))
        ));
        assert!(matches!(fit_affine(&pts(&[(1.0, 1.0), (2.0, 2.0)], 1.0)), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn affine_recovers_line() {
        let rows: Vec<_> = [1.0, 2.5, 4.0, 7.0].iter().map(|&l| (l, 2.0 + 3.0 * l)).collect();
        let r = fit_affine(&pts(&rows, 0.3)).unwrap();
        assert!((r.intercept - 2.0).abs() < 1e-12);
        assert!((r.slope - 3.0).abs() < 1e-12);
        assert!(r.chi2 < 1e-20);
        assert_eq!(r.dof, 2);
    }

    #[test]
    fn affine_on_proportional_data() {
        let p = pts(&[(10.0, 5.0), (20.0, 10.0), (30.0, 15.0)], 1.0);
        let a = fit_affine(&p).unwrap();
        let s = fit_scale(&p).unwrap();
        assert!(a.intercept.abs() < 1e-12);
        assert!((a.slope - s.lambda).abs() < 1e-14);
    }

    #[test]
    fn ordered_assignment() {
        let knots = [knot("y", 20.0), knot("x", 10.0), knot("z", 30.0)];
        let states = [state("b", 2.0), state("a", 1.0)];
        let pairs = assign(&knots, &states, &AssignMode::Ordered).unwrap();
        let names: Vec<_> = pairs.iter().map(|p| (p.state.as_str(), p.knot.as_str())).collect();
        assert_eq!(names, [("a", "x"), ("b", "y")]);

        let single = assign(&[knot("k", 1.0)], &[state("s", 3.0)], &AssignMode::Ordered).unwrap();
        assert_eq!(single.len(), 1);
        assert!(assign(&[knot("k", 1.0)], &states, &AssignMode::Ordered).is_err());
    }

    #[test]
    fn explicit_assignment_errors_name_missing() {
        let knots = [knot("2_1^2", 25.1)];
        let states = [state("f0(980)", 980.0)];
        let map = BTreeMap::from([("f0(980)".to_string(), "3_1".to_string())]);
        match assign(&knots, &states, &AssignMode::Explicit(map)) {
            Err(Error::Assignment { missing }) => assert_eq!(missing, ["3_1"]),
            other => panic!("{other:?}"),
        }
        let partial = BTreeMap::new();
        match assign(&knots, &states, &AssignMode::Explicit(partial)) {
            Err(Error::Assignment { missing }) => assert_eq!(missing, ["f0(980)"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_assignment() {
        let knots = [knot("a", 1.0), knot("b", 2.0)];
        let states = [state("s1", 10.0), state("s2", 5.0)];
        let map = BTreeMap::from([
            ("s1".to_string(), "a".to_string()),
            ("s2".to_string(), "b".to_string()),
        ]);
        let pairs = assign(&knots, &states, &AssignMode::Explicit(map)).unwrap();
        assert_eq!(pairs[0].knot, "a");
        assert_eq!(pairs[1].length, 2.0);
    }

    #[test]
    fn duplicate_names_rejected() {
        let knots = [knot("a", 1.0), knot("a", 2.0)];
        assert!(assign(&knots, &[state("s", 1.0)], &AssignMode::Ordered).is_err());
    }
}
