//! Result files: CSV tables and the JSON bundle that ties them to the
//! config and seed that produced them.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};

pub const BUNDLE_FORMAT: &str = "highgenus-bundle";
pub const BUNDLE_VERSION: &str = "1.0";

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Header plus rows, written once with RFC 4180 quoting.
pub struct Table {
    pub name: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width for {}", self.name);
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    fn write(&self, path: &Path) -> CliResult<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::csv(path, e))?;
        w.write_record(&self.header)
            .map_err(|e| CliError::csv(path, e))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| CliError::csv(path, e))?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }
}

#[derive(Debug, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub path: PathBuf,
    pub rows: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct ResultBundle {
    pub format: &'static str,
    pub version: &'static str,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub seed: u64,
    /// Normalized config, TOML text.
    pub config: String,
    /// SHA-256 of the canonical JSON of each complex the command read or wrote.
    pub complex_hashes: Vec<String>,
    pub tables: Vec<TableEntry>,
    pub summary: String,
    /// Command-specific values (JSON).
    pub details: serde_json::Value,
}

impl ResultBundle {
    pub fn new(command: &str, cfg: &ExperimentConfig) -> Self {
        ResultBundle {
            format: BUNDLE_FORMAT,
            version: BUNDLE_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed: cfg.seed,
            config: cfg.to_toml(),
            complex_hashes: Vec::new(),
            tables: Vec::new(),
            summary: String::new(),
            details: serde_json::Value::Null,
        }
    }

    /// Writes `table` as `<out_dir>/<name>.csv` and records it.
    pub fn add_table(&mut self, out_dir: &Path, table: &Table) -> CliResult<()> {
        let path = out_dir.join(format!("{}.csv", table.name));
        table.write(&path)?;
        let bytes = std::fs::read(&path).map_err(|e| CliError::io(&path, e))?;
        self.tables.push(TableEntry {
            name: table.name.clone(),
            path,
            rows: table.len(),
            sha256: sha256_hex(&bytes),
        });
        Ok(())
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.summary.push_str(text.as_ref());
        self.summary.push('\n');
    }

    /// Writes `<out_dir>/<command>.bundle.json` and prints the summary.
    pub fn finish(self, out_dir: &Path) -> CliResult<PathBuf> {
        let path = out_dir.join(format!("{}.bundle.json", self.command));
        let text = serde_json::to_string_pretty(&self).expect("bundle serializes");
        write_file(&path, &text)?;
        print!("{}", self.summary);
        println!("bundle: {}", path.display());
        Ok(path)
    }
}

/// Shortest decimal that round-trips, empty for non-finite values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

pub fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
