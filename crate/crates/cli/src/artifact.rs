//! Deterministic experiment artifacts.
//!
//! Every experiment emits a CSV table (plotting-tool neutral, diffable)
//! and a JSON mirror carrying the very same values. Floats are written
//! with 12 significant digits and the JSON mirror stores the reparsed
//! decimal, so both files agree bit-for-bit after parsing. A metadata
//! header (tool version, config hash, seeds) makes artifacts traceable to
//! the exact run that produced them.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::Result;

/// SHA-256 of the canonical (struct-ordered JSON) form of the config.
///
/// Hashing the parsed value, not the file text, keeps the hash stable
/// under key reordering and whitespace in the TOML document. The output
/// directory is normalized away first: the hash identifies what was run,
/// and the same experiment written to two destinations is the same
/// experiment (artifacts must come out byte-identical either way).
pub fn config_hash(config: &ExperimentConfig) -> String {
    let mut canonical_config = config.clone();
    canonical_config.experiment.output_dir = PathBuf::new();
    let canonical =
        serde_json::to_vec(&canonical_config).expect("config serialization cannot fail");
    let digest = Sha256::digest(&canonical);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").expect("writing to a string cannot fail");
    }
    hex
}

/// A float with 12 significant digits, the artifact-wide convention.
/// Non-finite values print as `nan`/`inf`/`-inf`.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_owned()
        } else {
            "-inf".to_owned()
        }
    } else {
        format!("{x:.11e}")
    }
}

/// One table cell; integers and strings print verbatim, floats go through
/// [`format_value`].
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    U64(u64),
    F64(f64),
    Bool(bool),
    Str(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::U64(v) => v.to_string(),
            Cell::F64(v) => format_value(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Str(v) => {
                debug_assert!(
                    !v.contains([',', '"', '\n']),
                    "string cells must not need CSV quoting"
                );
                v.clone()
            }
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::U64(v) => serde_json::Value::from(*v),
            // Reparse the 12-digit decimal so the mirror holds the same
            // value a CSV consumer reads; non-finite becomes null.
            Cell::F64(v) => {
                serde_json::Value::from(format_value(*v).parse::<f64>().unwrap_or(f64::NAN))
            }
            Cell::Bool(v) => serde_json::Value::from(*v),
            Cell::Str(v) => serde_json::Value::from(v.as_str()),
        }
    }
}

/// Provenance header embedded in every artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool_version: String,
    pub experiment: String,
    pub config_hash: String,
    pub seeds: Vec<u64>,
    pub time_unit: String,
}

impl Metadata {
    pub fn new(config: &ExperimentConfig, seeds: Vec<u64>) -> Self {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            experiment: config.experiment.name.as_str().to_owned(),
            config_hash: config_hash(config),
            seeds,
            time_unit: config.model.time_unit.clone(),
        }
    }
}

/// A rendered artifact: metadata, fixed column order, rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Metadata,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JsonArtifact<'a> {
    metadata: &'a Metadata,
    columns: &'a [&'static str],
    rows: Vec<Vec<serde_json::Value>>,
}

impl Table {
    pub fn new(metadata: Metadata, columns: Vec<&'static str>) -> Self {
        Table {
            metadata,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// CSV rendering: `#`-prefixed metadata lines, a header, the rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let meta = &self.metadata;
        let _ = writeln!(out, "# tool_version: {}", meta.tool_version);
        let _ = writeln!(out, "# experiment: {}", meta.experiment);
        let _ = writeln!(out, "# config_hash: {}", meta.config_hash);
        let seeds: Vec<String> = meta.seeds.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "# seeds: [{}]", seeds.join(", "));
        let _ = writeln!(out, "# time_unit: {}", meta.time_unit);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// JSON mirror with the same values as the CSV.
    pub fn to_json(&self) -> String {
        let artifact = JsonArtifact {
            metadata: &self.metadata,
            columns: &self.columns,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(Cell::json).collect())
                .collect(),
        };
        let mut text =
            serde_json::to_string_pretty(&artifact).expect("artifact serialization cannot fail");
        text.push('\n');
        text
    }

    /// Writes `<stem>.csv` and `<stem>.json` under `dir`, creating it.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let csv_path = dir.join(format!("{stem}.csv"));
        let json_path = dir.join(format!("{stem}.json"));
        fs::write(&csv_path, self.to_csv())?;
        fs::write(&json_path, self.to_json())?;
        Ok(vec![csv_path, json_path])
    }
}

/// Reads the `# config_hash:` header back out of an artifact CSV.
pub fn read_config_hash(text: &str) -> Option<String> {
    text.lines()
        .take_while(|line| line.starts_with('#'))
        .find_map(|line| line.strip_prefix("# config_hash: "))
        .map(str::to_owned)
}
