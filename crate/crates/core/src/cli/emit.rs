//! Run results and their JSON and CSV renderings.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Version of the JSON envelope and the CSV headers.
pub const SCHEMA_VERSION: u32 = 1;

/// A flat table for external plotting.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::InvalidInput(format!("CSV encoding failed: {e}"));
        w.write_record(&self.header).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("CSV encoding failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }
}

/// Shortest round-trip decimal, so tables are byte-stable.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) || !a.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn coords(x: &[f64]) -> String {
    x.iter().map(|c| num(*c)).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    pub schema_version: u32,
    pub command: String,
    pub argv: Vec<String>,
    pub config: Value,
    pub passed: bool,
    pub output: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    #[serde(skip)]
    pub table: Table,
}

impl RunResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("run result JSON is infallible");
        s.push('\n');
        s
    }

    pub fn write(&self, format: OutFormat, out: &mut dyn Write) -> Result<()> {
        let text = match format {
            OutFormat::Json => self.to_json(),
            OutFormat::Csv => self.table.to_csv()?,
        };
        out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
    }

    /// Writes `<command>.json` and `<command>.csv` into `dir`.
    pub fn emit_plot_data(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let stem = self.command.replace('-', "_");
        let json = dir.join(format!("{stem}.json"));
        std::fs::write(&json, self.to_json()).map_err(|e| Error::io(&json, e))?;
        let csv = dir.join(format!("{stem}.csv"));
        std::fs::write(&csv, self.table.to_csv()?).map_err(|e| Error::io(&csv, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_header() {
        let mut t = Table::new(&["N", "xi_err", "residual"]);
        t.push(vec!["8".into(), num(0.5), num(1e-12)]);
        assert_eq!(t.to_csv().unwrap(), "N,xi_err,residual\n8,0.5,1e-12\n");
    }
}
