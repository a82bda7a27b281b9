//! File formats: curve files and torus configurations (JSON), knot and state tables (CSV).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curves::{Component, Link};
use crate::error::{invalid, Result};
use crate::geom::Point;
use crate::inertia::SolidTorusSpec;
use crate::spectrum_fit::{plot_rows, FitResult, KnotEntry, StateEntry};

/// On-disk curve file; every component is closed by convention.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkFile {
    pub tube_radius: f64,
    pub density: f64,
    pub components: Vec<Vec<[f64; 3]>>,
}

impl From<&Link> for LinkFile {
    fn from(link: &Link) -> Self {
        LinkFile {
            tube_radius: link.tube_radius(),
            density: link.density(),
            components: link
                .components()
                .iter()
                .map(|c| c.vertices().iter().map(|v| [v.x, v.y, v.z]).collect())
                .collect(),
        }
    }
}

impl TryFrom<LinkFile> for Link {
    type Error = crate::error::Error;

    fn try_from(file: LinkFile) -> Result<Link> {
        let components = file
            .components
            .into_iter()
            .map(|c| Component::new(c.into_iter().map(Point::from).collect()))
            .collect::<Result<Vec<_>>>()?;
        Link::new(components, file.tube_radius, file.density)
    }
}

pub fn link_to_json(link: &Link) -> Result<String> {
    Ok(serde_json::to_string_pretty(&LinkFile::from(link))?)
}

pub fn link_from_json(text: &str) -> Result<Link> {
    serde_json::from_str::<LinkFile>(text)?.try_into()
}

pub fn read_link(path: impl AsRef<Path>) -> Result<Link> {
    let file: LinkFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    file.try_into()
}

pub fn write_link(path: impl AsRef<Path>, link: &Link) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, &LinkFile::from(link))?;
    writeln!(w)?;
    Ok(())
}

/// Torus configuration file: `{"tori": [{center, axis, major_radius, minor_radius, density}, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToriFile {
    pub tori: Vec<SolidTorusSpec>,
}

pub fn read_tori(path: impl AsRef<Path>) -> Result<Vec<SolidTorusSpec>> {
    let file: ToriFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    Ok(file.tori)
}

pub fn write_tori(path: impl AsRef<Path>, tori: &[SolidTorusSpec]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, &ToriFile { tori: tori.to_vec() })?;
    writeln!(w)?;
    Ok(())
}

#[derive(Deserialize)]
struct KnotRow {
    name: String,
    length: f64,
}

#[derive(Deserialize)]
struct StateRow {
    name: String,
    mass_mev: f64,
    #[serde(default)]
    sigma_mev: Option<f64>,
}

/// Knot table with header `name,length`.
pub fn parse_knots(reader: impl Read) -> Result<Vec<KnotEntry>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    rdr.deserialize::<KnotRow>()
        .map(|row| {
            let row = row?;
            Ok(KnotEntry {
                name: row.name,
                length: row.length,
            })
        })
        .collect()
}

/// State table with header `name,mass_mev,sigma_mev`. A missing or empty
/// sigma becomes 1 MeV and is logged.
pub fn parse_states(reader: impl Read) -> Result<Vec<StateEntry>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.deserialize::<StateRow>() {
        let row = row?;
        let sigma = match row.sigma_mev {
            Some(s) => s,
            None => {
                log::warn!("state {} has no uncertainty; using 1 MeV (unweighted)", row.name);
                1.0
            }
        };
        out.push(StateEntry {
            name: row.name,
            mass: row.mass_mev,
            sigma,
        });
    }
    Ok(out)
}

pub fn read_knots(path: impl AsRef<Path>) -> Result<Vec<KnotEntry>> {
    parse_knots(File::open(path)?)
}

pub fn read_states(path: impl AsRef<Path>) -> Result<Vec<StateEntry>> {
    parse_states(File::open(path)?)
}

/// Explicit assignment map: a JSON object from state name to knot name.
pub fn read_assignment_map(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    let map: BTreeMap<String, String> = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    if map.is_empty() {
        return Err(invalid("assignment map is empty"));
    }
    Ok(map)
}

/// Plot table with header `length,mass,fit`, one row per assigned pair.
pub fn write_plot_csv(writer: impl Write, fit: &FitResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["length", "mass", "fit"])?;
    for (l, e, f) in plot_rows(fit) {
        w.serialize((l, e, f))?;
    }
    w.flush()?;
    Ok(())
}
