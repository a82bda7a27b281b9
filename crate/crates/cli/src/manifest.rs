use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

/// Record of one run, written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(subcommand: &str, params: &impl Serialize) -> Result<Self> {
        let mut parameters = Map::new();
        flatten("", serde_json::to_value(params)?, &mut parameters);
        for key in ["out", "plot", "tori"] {
            parameters.remove(key);
        }
        Ok(RunManifest {
            subcommand: subcommand.to_string(),
            parameters,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        })
    }

    /// Write `<output>.manifest.json` for each output file.
    pub fn write_all(&self) -> Result<()> {
        if self.outputs.is_empty() {
            return Ok(());
        }
        let text = serde_json::to_string_pretty(self)?;
        for out in &self.outputs {
            let path = manifest_path(out);
            fs::write(&path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    output.with_file_name(name)
}

fn flatten(prefix: &str, value: Value, out: &mut Map<String, Value>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Null => {}
        other => {
            out.insert(prefix.to_string(), other);
        }
    }
}
