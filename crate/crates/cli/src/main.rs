mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, PhaseCommand};

fn run(cli: Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Link(a) => commands::link(a),
        Command::Phase(PhaseCommand::Ab(a)) => commands::phase_ab(a),
        Command::Phase(PhaseCommand::Ab2(a)) => commands::phase_ab2(a),
        Command::Phase(PhaseCommand::Josephson(a)) => commands::phase_josephson(a),
        Command::Inertia(a) => commands::inertia(a, cli.threads),
        Command::Rotor(a) => commands::rotor(a),
        Command::Fit(a) => commands::fit(a),
    }
}

fn error_kind(err: &anyhow::Error) -> &'static str {
    use tightknot::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::InvalidParameter(_)) => "invalid-parameter",
        Some(E::GeometricDegeneracy { .. }) => "geometric-degeneracy",
        Some(E::DegenerateGeometry(_)) => "degenerate-geometry",
        Some(E::UnsupportedClassification(_)) => "unsupported-classification",
        Some(E::Assignment { .. }) => "assignment",
        Some(E::InsufficientData(_)) => "insufficient-data",
        Some(E::SingularFit(_)) => "singular-fit",
        Some(E::Io(_)) => "io",
        Some(E::Json(_)) => "json",
        Some(E::Csv(_)) => "csv",
        None if err.downcast_ref::<std::io::Error>().is_some() => "io",
        None => "error",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let record = json!({ "error": { "kind": error_kind(&err), "message": format!("{err:#}") } });
            eprintln!("{record}");
            ExitCode::from(1)
        }
    }
}
