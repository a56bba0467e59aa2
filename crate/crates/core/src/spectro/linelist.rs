//! Line-list CSV: `gas,isotope,fc0_hz,S,delta_hz,alpha_air_hz,alpha_gas_hz,gamma`.
//! Lines starting with `#` are comments.

use super::{AbsorptionLine, LineDatabase};
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub const LINELIST_HEADER: [&str; 8] = [
    "gas",
    "isotope",
    "fc0_hz",
    "S",
    "delta_hz",
    "alpha_air_hz",
    "alpha_gas_hz",
    "gamma",
];

/// Parses line-list CSV text. Errors carry the 1-based file line and field.
pub fn parse_linelist(text: &str) -> Result<LineDatabase> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let header = rdr.headers().map_err(|e| Error::Parse {
        line: e.position().map_or(1, |p| p.line()),
        field: "header".into(),
        message: e.to_string(),
    })?;
    let names: Vec<&str> = header.iter().collect();
    if names != LINELIST_HEADER {
        return Err(Error::Parse {
            line: header.position().map_or(1, |p| p.line()),
            field: "header".into(),
            message: format!("expected `{}`, got `{}`", LINELIST_HEADER.join(","), names.join(",")),
        });
    }

    let mut lines = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            field: "record".into(),
            message: e.to_string(),
        })?;
        let line_no = rec.position().map_or(0, |p| p.line());
        if rec.len() != LINELIST_HEADER.len() {
            return Err(Error::Parse {
                line: line_no,
                field: "record".into(),
                message: format!("expected {} fields, got {}", LINELIST_HEADER.len(), rec.len()),
            });
        }
        let int = |i: usize| -> Result<u16> {
            rec[i].parse::<u16>().map_err(|e| Error::Parse {
                line: line_no,
                field: LINELIST_HEADER[i].into(),
                message: format!("`{}`: {e}", &rec[i]),
            })
        };
        let num = |i: usize| -> Result<f64> {
            rec[i].parse::<f64>().map_err(|e| Error::Parse {
                line: line_no,
                field: LINELIST_HEADER[i].into(),
                message: format!("`{}`: {e}", &rec[i]),
            })
        };
        let line = AbsorptionLine {
            gas_id: int(0)?,
            isotope_id: int(1)?,
            fc0_hz: num(2)?,
            intensity: num(3)?,
            delta_hz: num(4)?,
            alpha_air_hz: num(5)?,
            alpha_gas_hz: num(6)?,
            gamma: num(7)?,
        };
        line.validate().map_err(|(field, message)| Error::Parse {
            line: line_no,
            field: field.into(),
            message,
        })?;
        let key = (line.gas_id, line.isotope_id, line.fc0_hz.to_bits());
        if let Some(first) = seen.insert(key, line_no) {
            return Err(Error::Parse {
                line: line_no,
                field: "fc0_hz".into(),
                message: format!(
                    "duplicate of line {first} (gas {}, isotope {}, fc0 {} Hz)",
                    line.gas_id, line.isotope_id, line.fc0_hz
                ),
            });
        }
        lines.push(line);
    }
    LineDatabase::new(lines)
}

/// Serializes with 17 significant digits so that parsing round-trips exactly.
pub fn serialize_linelist(db: &LineDatabase) -> String {
    let mut out = String::new();
    out.push_str(&LINELIST_HEADER.join(","));
    out.push('\n');
    for l in db.lines() {
        let _ = writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            l.gas_id,
            l.isotope_id,
            l.fc0_hz,
            l.intensity,
            l.delta_hz,
            l.alpha_air_hz,
            l.alpha_gas_hz,
            l.gamma
        );
    }
    out
}
