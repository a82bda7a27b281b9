//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightknot::curves::DEFAULT_VERTICES;
use tightknot::inertia::{chain_tori, hopf_tori, pi2_rho_a5};
use tightknot::io::{read_knots, read_states, write_plot_csv};
use tightknot::rotor::classify_inertia;
use tightknot::spectrum_fit::fit_assigned;
use tightknot::{
    ab_phase_second_order, assign, classify_top, composite_inertia, fit_scale, gauss_linking,
    josephson_max_current, make_borromean, make_circle, make_tight_hopf, make_torus_link, mc_inertia,
    symmetric_top_levels, AssignMode, FitPoint, FluxConfig, Link, McConfig, Point, Provenance, TopKind,
    Vector,
};

use common::{projected_crossing_linking, rel_err, rigid_motion};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, fail: impl FnOnce() -> String) -> Outcome {
    if cond { Ok(ok) } else { Err(fail()) }
}

fn exact_hopf() -> Outcome {
    let tori = hopf_tori(1.0, 1.0).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let res = composite_inertia(&tori).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let m = res.in_units_of(pi2_rho_a5(1.0, 1.0)).principal_moments;
    let err = [21.0, 37.5, 37.5]
        .iter()
        .zip(&m)
        .map(|(w, g)| rel_err(*g, *w))
        .fold(0.0, f64::max);
    check(
        err < 1e-10 && elapsed < Duration::from_millis(1),
        format!("moments {m:?}, max rel err {err:.1e}, {elapsed:?}"),
        || format!("moments {m:?}, max rel err {err:.1e}, {elapsed:?}"),
    )
}

fn mc_runs() -> (Outcome, Outcome) {
    let link = match make_tight_hopf(1.0, DEFAULT_VERTICES) {
        Ok(l) => l,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let exact = composite_inertia(&hopf_tori(1.0, 1.0).unwrap()).unwrap().tensor;
    let cfg = McConfig { threads: Some(1), ..McConfig::new(20090721, 10_000_000) };

    let start = Instant::now();
    let single = match mc_inertia(&link, &cfg) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let elapsed = start.elapsed();
    let Provenance::MonteCarlo { stderr, .. } = single.provenance else { unreachable!() };
    let scale = exact.amax();
    let mut worst_sigma = 0.0f64;
    let mut worst_rel = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let diff = (single.tensor[(i, j)] - exact[(i, j)]).abs();
            worst_sigma = worst_sigma.max(diff / stderr[(i, j)]);
            worst_rel = worst_rel.max(diff / scale);
        }
    }
    let summary = format!(
        "worst |diff|/stderr {worst_sigma:.2}, worst |diff|/I_max {worst_rel:.1e}, {:.1}s single-threaded",
        elapsed.as_secs_f64()
    );
    let agreement = check(
        worst_sigma < 3.0 && worst_rel < 0.01 && elapsed < Duration::from_secs(60),
        summary.clone(),
        || summary,
    );

    let mut max_dev = 0.0f64;
    for threads in [Some(2), Some(4), Some(7), None] {
        match mc_inertia(&link, &McConfig { threads, ..cfg }) {
            Ok(r) => max_dev = max_dev.max((r.tensor - single.tensor).amax()),
            Err(e) => return (agreement, Err(e.to_string())),
        }
    }
    let determinism = check(
        max_dev <= 1e-15,
        format!("max deviation across 1, 2, 4, 7 and default threads: {max_dev:e}"),
        || format!("max deviation {max_dev:e}"),
    );
    (agreement, determinism)
}

fn chain_symmetry() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [2, 3, 4, 6] {
        let res = composite_inertia(&chain_tori(k, 1.0, 1.0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let kind = classify_inertia(&res).map_err(|e| e.to_string())?.kind;
        let [i1, i2, i3] = res.principal_moments;
        let gap = (i3 - i2) / i3;
        let expected = if k == 3 { TopKind::Asymmetric } else { TopKind::ProlateSymmetric };
        ok &= kind == expected;
        if k != 3 {
            ok &= gap.abs() < 1e-9 && i2 > i1;
        }
        notes.push(format!("k={k} {kind} (gap {gap:.1e})"));
    }
    let text = notes.join(", ");
    check(ok, text.clone(), || text)
}

fn linking() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, link: &Link, i: usize, j: usize, expected: &[i64]| -> Result<(), String> {
        let r = gauss_linking(&link.components()[i], &link.components()[j]).map_err(|e| e.to_string())?;
        ok &= r.residual < 1e-9 && expected.contains(&r.rounded);
        notes.push(format!("{name} {} (res {:.0e})", r.rounded, r.residual));
        Ok(())
    };

    let hopf = make_tight_hopf(1.0, DEFAULT_VERTICES).map_err(|e| e.to_string())?;
    record("hopf", &hopf, 0, 1, &[1, -1])?;

    let c1 = make_circle(Point::new(-3.0, 0.0, 0.0), Vector::z(), 1.0, 256).map_err(|e| e.to_string())?;
    let c2 = make_circle(Point::new(3.0, 0.0, 0.0), Vector::new(1.0, 1.0, 0.0), 1.0, 256).map_err(|e| e.to_string())?;
    let split = Link::new(vec![c1, c2], 0.1, 1.0).map_err(|e| e.to_string())?;
    record("split", &split, 0, 1, &[0])?;

    let borromean = make_borromean(2.0, 1.0, DEFAULT_VERTICES).map_err(|e| e.to_string())?;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        record(&format!("borromean {i}-{j}"), &borromean, i, j, &[0])?;
    }

    let t24 = make_torus_link(2, 4, 2.0, 1.0, 0.1, 400)
        .map_err(|e| e.to_string())?
        .transformed(&rigid_motion(5));
    let r = gauss_linking(&t24.components()[0], &t24.components()[1]).map_err(|e| e.to_string())?;
    let crossings = projected_crossing_linking(&t24.components()[0], &t24.components()[1]);
    ok &= r.residual < 1e-9 && r.rounded.abs() == 2 && (crossings - r.rounded as f64).abs() < 1e-12;
    notes.push(format!("T(2,4) {} vs crossings {crossings} (res {:.0e})", r.rounded, r.residual));

    let text = notes.join(", ");
    check(ok, text.clone(), || text)
}

fn josephson() -> Outcome {
    let mut values = Vec::new();
    for x in [0.0, 0.5, 1.0] {
        let cfg = FluxConfig { phi1: x, phi2: 1.0, phi0: 1.0, j0: 1.0, ..FluxConfig::default() };
        values.push(josephson_max_current(&cfg).map_err(|e| e.to_string())?);
    }
    let table_ok = values.iter().zip([1.0, 0.0, 1.0]).all(|(g, w)| (g - w).abs() <= 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cfg = FluxConfig {
            phi1: rng.random_range(-10.0..10.0),
            phi2: rng.random_range(0.1..5.0),
            phi0: rng.random_range(0.1..5.0),
            j0: rng.random_range(0.1..10.0),
            ..FluxConfig::default()
        };
        let base = josephson_max_current(&cfg).map_err(|e| e.to_string())?;
        let n = rng.random_range(-5..=5) as f64;
        let shifted = FluxConfig { phi1: cfg.phi1 + n * cfg.phi0 / cfg.phi2, ..cfg };
        let moved = josephson_max_current(&shifted).map_err(|e| e.to_string())?;
        worst = worst.max((moved - base).abs() / cfg.j0);
    }
    check(
        table_ok && worst < 1e-9,
        format!("J/J0 at 0, 1/2, 1: {values:?}; worst periodic deviation {worst:.1e}"),
        || format!("J/J0 {values:?}, worst periodic deviation {worst:.1e}"),
    )
}

fn bilinearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cfg = FluxConfig {
            phi1: rng.random_range(-10.0..10.0),
            phi2: rng.random_range(-10.0..10.0),
            kappa: rng.random_range(0.1..3.0),
            topo_coeff: rng.random_range(1..5),
            ..FluxConfig::default()
        };
        let a = rng.random_range(-10.0..10.0);
        let lhs = ab_phase_second_order(&FluxConfig { phi1: a * cfg.phi1, ..cfg });
        let rhs = a * ab_phase_second_order(&cfg);
        let lhs2 = ab_phase_second_order(&FluxConfig { phi2: a * cfg.phi2, ..cfg });
        worst = worst.max(rel_err(lhs, rhs)).max(rel_err(lhs2, rhs));
    }
    check(worst < 1e-12, format!("worst relative deviation {worst:.1e}"), || {
        format!("worst relative deviation {worst:.1e}")
    })
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn fit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let mut worst_lambda = 0.0f64;
    let mut worst_chi2 = 0.0f64;
    let mut worst_orth = 0.0f64;
    for _ in 0..100 {
        let lambda = rng.random_range(1.0..60.0);
        let n = rng.random_range(2..30);
        let lengths: Vec<f64> = (0..n).map(|_| rng.random_range(10.0..200.0)).collect();
        let sigmas: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..50.0)).collect();
        let exact: Vec<FitPoint> = lengths
            .iter()
            .zip(&sigmas)
            .map(|(&length, &sigma)| FitPoint { length, energy: lambda * length, sigma })
            .collect();
        let r = fit_scale(&exact).map_err(|e| e.to_string())?;
        worst_lambda = worst_lambda.max(rel_err(r.lambda, lambda));
        worst_chi2 = worst_chi2.max(r.chi2);

        let noisy: Vec<FitPoint> = exact
            .iter()
            .map(|p| FitPoint { energy: p.energy + rng.random_range(-2.0..2.0) * p.sigma, ..*p })
            .collect();
        let r = fit_scale(&noisy).map_err(|e| e.to_string())?;
        let (mut num, mut den) = (0.0, 0.0);
        for (p, res) in noisy.iter().zip(&r.residuals) {
            let w = 1.0 / (p.sigma * p.sigma);
            num += w * p.length * res;
            den += w * p.length * p.energy.abs();
        }
        worst_orth = worst_orth.max(num.abs() / den);
    }
    let synthetic_ok = worst_lambda < 1e-12 && worst_chi2 < 1e-20 && worst_orth < 1e-10;

    let knots = read_knots(data_dir().join("knots.csv")).map_err(|e| e.to_string())?;
    let states = read_states(data_dir().join("f0_states.csv")).map_err(|e| e.to_string())?;
    let pairs = assign(&knots, &states, &AssignMode::Ordered).map_err(|e| e.to_string())?;
    let monotone = pairs.windows(2).all(|w| w[0].mass <= w[1].mass && w[0].length <= w[1].length);
    let result = fit_assigned(pairs).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    write_plot_csv(&mut csv, &result).map_err(|e| e.to_string())?;
    let csv = String::from_utf8(csv).map_err(|e| e.to_string())?;
    let rows = csv.lines().count();
    let sample_ok = result.lambda.is_finite() && monotone && rows == states.len() + 1;

    let text = format!(
        "synthetic: lambda err {worst_lambda:.1e}, chi2 {worst_chi2:.1e}, orthogonality {worst_orth:.1e}; \
         sample tables: lambda {:.2} MeV, {} pairs monotone={monotone}, {rows} csv lines",
        result.lambda,
        states.len()
    );
    check(synthetic_ok && sample_ok, text.clone(), || text)
}

fn rotor_ladder() -> Outcome {
    let unit = PI * PI;
    let moments = [21.0 * unit, 37.5 * unit, 37.5 * unit];
    let cls = classify_top(moments, 1e-9).map_err(|e| e.to_string())?;
    if cls.kind != TopKind::ProlateSymmetric {
        return Err(format!("classified as {}", cls.kind));
    }
    let levels = symmetric_top_levels(&cls, 3).map_err(|e| e.to_string())?;
    let energy = |j: u32, k: i32| levels.iter().find(|l| l.j == j && l.k == k).map(|l| l.energy);
    let mut monotone = levels.len() == 16;
    for j in 1..=3u32 {
        for k in 0..j as i32 {
            monotone &= matches!((energy(j, k), energy(j, k + 1)), (Some(lo), Some(hi)) if hi > lo);
            monotone &= energy(j, k + 1) == energy(j, -(k + 1));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let mut scales = vec![2.0, 0.5, 8.0];
    scales.extend((0..20).map(|_| rng.random_range(0.01..100.0)));
    let mut exact_pow2 = true;
    let mut worst = 0.0f64;
    for (idx, &s) in scales.iter().enumerate() {
        let scaled = classify_top(moments.map(|m| m * s), 1e-9).map_err(|e| e.to_string())?;
        let other = symmetric_top_levels(&scaled, 3).map_err(|e| e.to_string())?;
        for (a, b) in levels.iter().zip(&other) {
            if (a.j, a.k) != (b.j, b.k) {
                return Err("level order changed under scaling".into());
            }
            if idx < 3 {
                exact_pow2 &= b.energy == a.energy / s;
            } else if a.energy != 0.0 {
                worst = worst.max(rel_err(b.energy * s, a.energy));
            }
        }
    }
    check(
        monotone && exact_pow2 && worst < 1e-14,
        format!("16 levels, monotone in |K|, power-of-two scaling bit-exact, general scaling {worst:.1e}"),
        || format!("monotone={monotone}, pow2 exact={exact_pow2}, scaling deviation {worst:.1e}"),
    )
}

fn main() -> ExitCode {
    let (mc_agree, mc_det) = mc_runs();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 exact Hopf tensor", exact_hopf()),
        ("2 Monte Carlo vs exact", mc_agree),
        ("3 Monte Carlo schedule independence", mc_det),
        ("4 chain symmetry", chain_symmetry()),
        ("5 linking numbers", linking()),
        ("6 Josephson current", josephson()),
        ("7 second-order phase bilinearity", bilinearity()),
        ("8 spectrum fit", fit()),
        ("9 rotor ladder", rotor_ladder()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        println!("all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", results.len());
        ExitCode::FAILURE
    }
}
