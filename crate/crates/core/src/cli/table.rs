//! Result tables: CSV with `#` provenance lines, 12 significant digits and
//! LF line endings, plus a TOML provenance sidecar.

use crate::error::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.11e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub command: String,
    pub version: String,
    pub config_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: &str, config_bytes: &[u8], seed: Option<u64>) -> Self {
        Provenance {
            command: command.into(),
            version: crate::VERSION.into(),
            config_sha256: hex::encode(Sha256::digest(config_bytes)),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Provenance,
}

impl ResultTable {
    pub fn new(columns: &[&str], provenance: Provenance) -> Self {
        ResultTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            provenance,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::invalid(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = std::io::BufWriter::new(w);
        let io = |e| Error::io("<table>", e);
        let p = &self.provenance;
        writeln!(w, "# terasim {} {}", p.version, p.command).map_err(io)?;
        writeln!(w, "# config_sha256 {}", p.config_sha256).map_err(io)?;
        match p.seed {
            Some(s) => writeln!(w, "# seed {s}").map_err(io)?,
            None => writeln!(w, "# seed none").map_err(io)?,
        }
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        let cerr = |e: csv::Error| Error::io("<table>", e.into());
        wtr.write_record(&self.columns).map_err(cerr)?;
        for row in &self.rows {
            wtr.write_record(row.iter().map(Cell::render)).map_err(cerr)?;
        }
        wtr.flush().map_err(io)
    }

    pub fn write_provenance<W: Write>(&self, mut w: W) -> Result<()> {
        let text = toml::to_string(&self.provenance).map_err(|e| Error::Config(e.to_string()))?;
        w.write_all(text.as_bytes()).map_err(|e| Error::io("<provenance>", e))
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}
