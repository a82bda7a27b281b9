use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;
use tightknot::inertia::{chain_tori, pi2_rho_a5, SolidTorusSpec};
use tightknot::io::{read_assignment_map, read_knots, read_link, read_states, read_tori, write_link, write_plot_csv, write_tori};
use tightknot::phases::FluxNormalization;
use tightknot::rotor::{classify_inertia, classify_top_with_hbar};
use tightknot::spectrum_fit::{fit_assigned, fit_assigned_affine};
use tightknot::{
    ab_phase_first_order, ab_phase_second_order, assign, gauss_linking, josephson_max_current, make_borromean,
    make_chain, make_tight_hopf, make_torus_link, mc_inertia, symmetric_top_levels, AssignMode, FluxConfig,
    InertiaResult, Link, McConfig, Provenance,
};

use crate::args::{
    Ab2Args, AbArgs, FitArgs, Format, GenerateArgs, InertiaArgs, JosephsonArgs, LinkArgs, Normalization, RotorArgs,
    Shape, Unit,
};
use crate::manifest::RunManifest;

/// Rejected option combinations, reported like parameter errors from the library.
macro_rules! bail {
    ($($arg:tt)*) => {
        return Err(tightknot::Error::InvalidParameter(format!($($arg)*)).into())
    };
}

/// Write `text` to `out`, or to stdout when `out` is `None`.
fn emit(text: &str, out: Option<&Path>, manifest: &mut RunManifest) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            manifest.outputs.push(path.to_path_buf());
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit_json(value: &impl Serialize, out: Option<&Path>, manifest: &mut RunManifest) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    emit(&text, out, manifest)
}

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let mut manifest = RunManifest::new("generate", args)?;
    let (link, tori) = match args.shape {
        Shape::Hopf { a } => (make_tight_hopf(a, args.n)?, Some(chain_tori(2, a, args.density)?)),
        Shape::Chain { k, a } => (make_chain(k, a, args.n)?, Some(chain_tori(k, a, args.density)?)),
        Shape::Borromean { r1, r2 } => (make_borromean(r1, r2, args.n)?, None),
        Shape::Torus { p, q, major, minor, a } => (make_torus_link(p, q, major, minor, a, args.n)?, None),
    };
    let link = link.with_density(args.density)?;

    match &args.out {
        Some(path) => {
            write_link(path, &link).with_context(|| format!("writing {}", path.display()))?;
            manifest.outputs.push(path.clone());
        }
        None => emit(&tightknot::io::link_to_json(&link)?, None, &mut manifest)?,
    }
    if let Some(path) = &args.tori {
        let Some(tori) = tori else {
            bail!("--tori is only available for hopf and chain shapes");
        };
        write_tori(path, &tori).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.push(path.clone());
    }
    manifest.write_all()
}

#[derive(Serialize)]
struct PairLinking {
    pair: [usize; 2],
    #[serde(flatten)]
    result: tightknot::LinkingResult,
}

pub fn link(args: &LinkArgs) -> Result<()> {
    let mut manifest = RunManifest::new("link", args)?;
    let link = read_link(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let n = link.components().len();
    let pairs: Vec<(usize, usize)> = match &args.pair {
        Some(p) => {
            let (i, j) = (p[0], p[1]);
            if i >= n || j >= n {
                bail!("component index out of range: the link has {n} components");
            }
            if i == j {
                bail!("a component cannot be linked with itself");
            }
            vec![(i, j)]
        }
        None => (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect(),
    };
    let results = pairs
        .into_iter()
        .map(|(i, j)| {
            let result = gauss_linking(&link.components()[i], &link.components()[j])?;
            Ok(PairLinking { pair: [i, j], result })
        })
        .collect::<Result<Vec<_>>>()?;
    if args.pair.is_some() {
        emit_json(&results[0], args.out.as_deref(), &mut manifest)?;
    } else {
        emit_json(&results, args.out.as_deref(), &mut manifest)?;
    }
    manifest.write_all()
}

pub fn phase_ab(args: &AbArgs) -> Result<()> {
    let mut manifest = RunManifest::new("phase ab", args)?;
    let cfg = FluxConfig { phi1: args.phi1, kappa: args.kappa, ..FluxConfig::default() };
    let phase = ab_phase_first_order(&cfg, args.linking);
    emit_json(&json!({ "phase": phase }), args.out.as_deref(), &mut manifest)?;
    manifest.write_all()
}

pub fn phase_ab2(args: &Ab2Args) -> Result<()> {
    let mut manifest = RunManifest::new("phase ab2", args)?;
    let cfg = FluxConfig {
        phi1: args.phi1,
        phi2: args.phi2,
        kappa: args.kappa,
        topo_coeff: args.topo_coeff,
        ..FluxConfig::default()
    };
    let phase = ab_phase_second_order(&cfg);
    emit_json(&json!({ "phase": phase }), args.out.as_deref(), &mut manifest)?;
    manifest.write_all()
}

pub fn phase_josephson(args: &JosephsonArgs) -> Result<()> {
    let mut manifest = RunManifest::new("phase josephson", args)?;
    let cfg = FluxConfig {
        phi1: args.phi1,
        phi2: args.phi2,
        phi0: args.phi0,
        j0: args.j0,
        normalization: match args.normalization {
            Normalization::Fluxoid => FluxNormalization::Fluxoid,
            Normalization::FluxoidSquared => FluxNormalization::FluxoidSquared,
        },
        ..FluxConfig::default()
    };
    let current = josephson_max_current(&cfg)?;
    emit_json(&json!({ "max_current": current }), args.out.as_deref(), &mut manifest)?;
    manifest.write_all()
}

#[derive(Serialize)]
struct InertiaReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<Unit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit_value: Option<f64>,
    classification: tightknot::TopClassification,
    #[serde(flatten)]
    result: InertiaResult,
}

fn common_tube(tori: &[SolidTorusSpec]) -> Result<(f64, f64)> {
    let first = &tori[0];
    if tori.iter().any(|t| t.minor_radius != first.minor_radius || t.density != first.density) {
        bail!("--normalize needs every torus to share one tube radius and density");
    }
    Ok((first.minor_radius, first.density))
}

pub fn inertia(args: &InertiaArgs, threads: Option<usize>) -> Result<()> {
    let mut manifest = RunManifest::new("inertia", args)?;
    let (result, tube) = if args.exact {
        let config = args.config.as_ref().expect("clap enforces --config with --exact");
        let tori = read_tori(config).with_context(|| format!("reading {}", config.display()))?;
        if tori.is_empty() {
            bail!("{} lists no tori", config.display());
        }
        let result = tightknot::composite_inertia(&tori)?;
        let tube = match args.normalize {
            Some(_) => Some(common_tube(&tori)?),
            None => None,
        };
        (result, tube)
    } else {
        if !args.mc {
            bail!("choose --mc (with a link file) or --exact (with --config)");
        }
        let file = args.file.as_ref().expect("clap enforces a file with --mc");
        let link: Link = read_link(file).with_context(|| format!("reading {}", file.display()))?;
        let cfg = McConfig { seed: args.seed, samples: args.samples, chunks: args.chunks, threads };
        manifest.seed = Some(args.seed);
        (mc_inertia(&link, &cfg)?, Some((link.tube_radius(), link.density())))
    };
    if !args.mc {
        manifest.parameters.remove("seed");
        manifest.parameters.remove("samples");
        manifest.parameters.remove("chunks");
    }

    let (unit_value, result) = match (args.normalize, tube) {
        (Some(Unit::Pi2RhoA5), Some((a, rho))) => {
            let u = pi2_rho_a5(rho, a);
            (Some(u), result.in_units_of(u))
        }
        _ => (None, result),
    };
    let classification = classify_inertia(&result)?;
    if let Provenance::MonteCarlo { accepted, .. } = &result.provenance {
        log::info!("{accepted} of {} samples inside the tube", args.samples);
    }
    let report = InertiaReport { unit: args.normalize, unit_value, classification, result };
    emit_json(&report, args.out.as_deref(), &mut manifest)?;
    manifest.write_all()
}

pub fn rotor(args: &RotorArgs) -> Result<()> {
    let mut manifest = RunManifest::new("rotor", args)?;
    let moments = [args.moments[0], args.moments[1], args.moments[2]];
    let cls = classify_top_with_hbar(moments, args.tol, args.hbar)?;
    let levels = symmetric_top_levels(&cls, args.jmax)?;
    match args.format {
        Format::Json => {
            emit_json(&json!({ "classification": cls, "levels": levels }), args.out.as_deref(), &mut manifest)?
        }
        Format::Csv => {
            let mut text = String::from("j,k,energy\n");
            for l in &levels {
                text.push_str(&format!("{},{},{}\n", l.j, l.k, l.energy));
            }
            emit(&text, args.out.as_deref(), &mut manifest)?;
        }
    }
    manifest.write_all()
}

pub fn fit(args: &FitArgs) -> Result<()> {
    let mut manifest = RunManifest::new("fit", args)?;
    let knots = read_knots(&args.knots).with_context(|| format!("reading {}", args.knots.display()))?;
    let states = read_states(&args.states).with_context(|| format!("reading {}", args.states.display()))?;
    let mode = match &args.assign {
        Some(path) => AssignMode::Explicit(
            read_assignment_map(path).with_context(|| format!("reading {}", path.display()))?,
        ),
        None => AssignMode::Ordered,
    };
    let pairs = assign(&knots, &states, &mode)?;
    let proportional = fit_assigned(pairs.clone())?;

    if let Some(path) = &args.plot {
        let file = File::create(path).with_context(|| format!("writing {}", path.display()))?;
        write_plot_csv(file, &proportional)?;
        manifest.outputs.push(PathBuf::from(path));
    }
    if args.affine {
        let affine = fit_assigned_affine(pairs)?;
        emit_json(&json!({ "proportional": proportional, "affine": affine }), args.out.as_deref(), &mut manifest)?;
    } else {
        emit_json(&proportional, args.out.as_deref(), &mut manifest)?;
    }
    manifest.write_all()
}
