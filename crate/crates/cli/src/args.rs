use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "tightknot", version, about = "Tight knots and links: geometry, linking, inertia, rotor levels and spectrum fits")]
pub struct Cli {
    /// Worker threads for Monte Carlo runs. Results do not depend on it.
    #[arg(long, global = true, env = "TIGHTKNOT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a polygonal link (and optionally its solid tori) to a file.
    Generate(GenerateArgs),
    /// Gauss linking numbers between components of a link file.
    Link(LinkArgs),
    /// Aharonov-Bohm phases and the Josephson critical current.
    #[command(subcommand)]
    Phase(PhaseCommand),
    /// Inertia tensor of a link file (Monte Carlo) or a torus configuration (exact).
    Inertia(InertiaArgs),
    /// Symmetric-top rotational levels from principal moments.
    Rotor(RotorArgs),
    /// Fit a mass table to knot lengths with one scale factor.
    Fit(FitArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[command(subcommand)]
    #[serde(flatten)]
    pub shape: Shape,

    /// Vertices per component.
    #[arg(long, default_value_t = 512, global = true)]
    pub n: usize,

    #[arg(long, default_value_t = 1.0, global = true)]
    pub density: f64,

    /// Output link file (JSON). Printed to stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Also write the matching solid tori (round-ring shapes only).
    #[arg(long, global = true)]
    pub tori: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    /// Tight Hopf link of tube radius a.
    Hopf {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
    /// Straight chain of k rings.
    Chain {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
    /// Borromean rings from three orthogonal ellipses with semi-axes r1, r2.
    Borromean {
        #[arg(long, default_value_t = 2.0)]
        r1: f64,
        #[arg(long, default_value_t = 1.0)]
        r2: f64,
    },
    /// (p, q) torus knot or link on a torus with radii major, minor.
    Torus {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 2.0)]
        major: f64,
        #[arg(long, default_value_t = 1.0)]
        minor: f64,
        #[arg(long, default_value_t = 0.1)]
        a: f64,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct LinkArgs {
    /// Link file (JSON).
    pub file: PathBuf,

    /// Only this pair of components; all pairs otherwise.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Option<Vec<usize>>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum PhaseCommand {
    /// First-order phase kappa * Lk * phi1.
    Ab(AbArgs),
    /// Second-order phase topo_coeff * kappa^2 * phi1 * phi2.
    Ab2(Ab2Args),
    /// Maximum current j0 * |cos(pi phi1 phi2 / phi0)|.
    Josephson(JosephsonArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct AbArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub kappa: f64,
    /// Linking number of the path with the flux tube.
    #[arg(long, allow_hyphen_values = true)]
    pub linking: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct Ab2Args {
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi2: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub kappa: f64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub topo_coeff: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct JosephsonArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub phi2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub phi0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub j0: f64,
    #[arg(long, value_enum, default_value_t = Normalization::Fluxoid)]
    pub normalization: Normalization,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Divide phi1 * phi2 by phi0.
    Fluxoid,
    /// Divide phi1 * phi2 by phi0^2.
    FluxoidSquared,
}

#[derive(Args, Debug, Serialize)]
pub struct InertiaArgs {
    /// Link file (JSON), required with --mc.
    #[arg(required_unless_present = "exact")]
    pub file: Option<PathBuf>,

    /// Monte Carlo integration over the tube volume.
    #[arg(long, conflicts_with = "exact", requires = "file")]
    pub mc: bool,

    /// Closed-form sum over the solid tori in --config.
    #[arg(long, requires = "config")]
    pub exact: bool,

    /// Torus configuration (JSON) for --exact.
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,

    #[arg(long, default_value_t = tightknot::inertia::DEFAULT_CHUNKS)]
    pub chunks: u32,

    /// Report the tensor in this unit.
    #[arg(long, value_enum)]
    pub normalize: Option<Unit>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    /// pi^2 * density * (tube radius)^5
    #[value(name = "pi2-rho-a5")]
    Pi2RhoA5,
}

#[derive(Args, Debug, Serialize)]
pub struct RotorArgs {
    /// Principal moments, any order.
    #[arg(long, num_args = 3, value_names = ["I1", "I2", "I3"], required = true)]
    pub moments: Vec<f64>,

    #[arg(long, default_value_t = 3)]
    pub jmax: u32,

    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,

    /// Relative tolerance for equal moments.
    #[arg(long, default_value_t = tightknot::inertia::EXACT_DEGENERACY_TOLERANCE)]
    pub tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Serialize)]
pub struct FitArgs {
    /// Knot table, columns name,length.
    #[arg(long)]
    pub knots: PathBuf,

    /// State table, columns name,mass_mev,sigma_mev.
    #[arg(long)]
    pub states: PathBuf,

    /// Also report the straight-line fit with an intercept.
    #[arg(long)]
    pub affine: bool,

    /// JSON object mapping state names to knot names; ordered by mass otherwise.
    #[arg(long)]
    pub assign: Option<PathBuf>,

    /// Plot table (CSV) with columns length,mass,fit.
    #[arg(long)]
    pub plot: Option<PathBuf>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}
