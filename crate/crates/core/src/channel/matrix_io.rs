//! `row,col,re,im` CSV for complex matrices (0-based indices, lossless
//! 17-digit values).

use crate::error::{Error, Result};
use crate::{CMatrix, Complex64};
use std::io::{Read, Write};

pub fn write_matrix_csv<W: Write>(w: W, m: &CMatrix) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let io = |e: csv::Error| Error::io("<matrix csv>", e.into());
    wtr.write_record(["row", "col", "re", "im"]).map_err(io)?;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            wtr.write_record([
                r.to_string(),
                c.to_string(),
                format!("{:.16e}", z.re),
                format!("{:.16e}", z.im),
            ])
            .map_err(io)?;
        }
    }
    wtr.flush().map_err(|e| Error::io("<matrix csv>", e))
}

/// Reads a matrix; every (row, col) in the bounding box must appear once.
pub fn read_matrix_csv<R: Read>(r: R) -> Result<CMatrix> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let mut cells = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            field: "record".into(),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<&str> {
            rec.get(i).ok_or_else(|| Error::Parse {
                line,
                field: name.into(),
                message: "missing".into(),
            })
        };
        let parse_err = |name: &str, e: String| Error::Parse {
            line,
            field: name.into(),
            message: e,
        };
        let row: usize = field(0, "row")?.parse().map_err(|e: std::num::ParseIntError| parse_err("row", e.to_string()))?;
        let col: usize = field(1, "col")?.parse().map_err(|e: std::num::ParseIntError| parse_err("col", e.to_string()))?;
        let re: f64 = field(2, "re")?.parse().map_err(|e: std::num::ParseFloatError| parse_err("re", e.to_string()))?;
        let im: f64 = field(3, "im")?.parse().map_err(|e: std::num::ParseFloatError| parse_err("im", e.to_string()))?;
        cells.push((row, col, Complex64::new(re, im)));
    }
    let rows = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
    let cols = cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
    let mut m = CMatrix::zeros(rows, cols);
    let mut seen = vec![false; rows * cols];
    for (r, c, z) in cells {
        if std::mem::replace(&mut seen[r * cols + c], true) {
            return Err(Error::invalid(format!("entry ({r}, {c}) appears twice")));
        }
        m[(r, c)] = z;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::invalid(format!("entry ({}, {}) missing", i / cols, i % cols)));
    }
    Ok(m)
}
