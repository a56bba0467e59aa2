//! Molecular absorption: line database, line-by-line and closed-form
//! absorption coefficients, and molecular noise.

mod approx;
mod exact;
mod humidity;
mod linelist;
mod noise;
mod peaks;

pub use approx::{approx_absorption, ApproxModel};
pub use exact::{
    absorption_coefficient, absorption_coefficient_with, absorption_spectrum, gas_basis,
    ExactOptions,
};
pub use humidity::{saturation_vapor_pressure_hpa, water_mixing_ratio};
pub use linelist::{parse_linelist, serialize_linelist, LINELIST_HEADER};
pub use noise::{molecular_noise_temperature, total_noise_power, DEFAULT_NOISE_STEP_HZ};
pub use peaks::{loss_peaks, LossPeak};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Gas identifier used for water vapour (HITRAN molecule number).
pub const H2O: u16 = 1;
/// Gas identifier used for molecular oxygen.
pub const O2: u16 = 7;

/// Environment variable naming the default line-list file.
pub const LINELIST_ENV: &str = "TERASIM_LINELIST";

const BUNDLED_LINELIST: &str = include_str!("../../data/linelist.csv");

/// One gas component of a [`Medium`]. `isotope_id == 0` applies the mixing
/// ratio to every isotope of the gas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Species {
    pub gas_id: u16,
    #[serde(default)]
    pub isotope_id: u16,
    pub mixing_ratio: f64,
}

/// Propagation medium: temperature, pressure and gas composition.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    temperature_k: f64,
    pressure_atm: f64,
    reference_temperature_k: f64,
    reference_pressure_atm: f64,
    species: Vec<Species>,
}

impl Medium {
    pub const REFERENCE_TEMPERATURE_K: f64 = 296.0;

    /// Medium with no absorbing species.
    pub fn new(temperature_k: f64, pressure_atm: f64) -> Result<Self> {
        Self::with_reference(
            temperature_k,
            pressure_atm,
            Self::REFERENCE_TEMPERATURE_K,
            1.0,
        )
    }

    pub fn with_reference(
        temperature_k: f64,
        pressure_atm: f64,
        reference_temperature_k: f64,
        reference_pressure_atm: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("temperature_k", temperature_k),
            ("pressure_atm", pressure_atm),
            ("reference_temperature_k", reference_temperature_k),
            ("reference_pressure_atm", reference_pressure_atm),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Medium {
            temperature_k,
            pressure_atm,
            reference_temperature_k,
            reference_pressure_atm,
            species: Vec::new(),
        })
    }

    /// Adds a species; rejects duplicates, ratios outside [0, 1] and totals above 1.
    pub fn add_species(&mut self, s: Species) -> Result<()> {
        if !(s.mixing_ratio.is_finite() && (0.0..=1.0).contains(&s.mixing_ratio)) {
            return Err(Error::invalid(format!(
                "mixing ratio of gas {} must lie in [0, 1], got {}",
                s.gas_id, s.mixing_ratio
            )));
        }
        if self
            .species
            .iter()
            .any(|o| o.gas_id == s.gas_id && o.isotope_id == s.isotope_id)
        {
            return Err(Error::invalid(format!(
                "species ({}, {}) listed twice",
                s.gas_id, s.isotope_id
            )));
        }
        let total: f64 = self.species.iter().map(|o| o.mixing_ratio).sum::<f64>() + s.mixing_ratio;
        if total > 1.0 + 1e-12 {
            return Err(Error::invalid(format!(
                "mixing ratios sum to {total}, above 1"
            )));
        }
        self.species.push(s);
        Ok(())
    }

    pub fn with_species(mut self, gas_id: u16, isotope_id: u16, mixing_ratio: f64) -> Result<Self> {
        self.add_species(Species {
            gas_id,
            isotope_id,
            mixing_ratio,
        })?;
        Ok(self)
    }

    /// Replaces the mixing ratio of every entry for `gas_id` (or adds a
    /// wildcard entry). Used when re-linearizing around an estimate.
    pub fn set_gas_ratio(&mut self, gas_id: u16, mixing_ratio: f64) -> Result<()> {
        self.species.retain(|s| s.gas_id != gas_id);
        self.add_species(Species {
            gas_id,
            isotope_id: 0,
            mixing_ratio,
        })
    }

    pub fn temperature_k(&self) -> f64 {
        self.temperature_k
    }

    pub fn pressure_atm(&self) -> f64 {
        self.pressure_atm
    }

    pub fn reference_temperature_k(&self) -> f64 {
        self.reference_temperature_k
    }

    pub fn reference_pressure_atm(&self) -> f64 {
        self.reference_pressure_atm
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    /// Mixing ratio for a (gas, isotope) pair; an exact entry wins over a
    /// gas-wide one. Absent species have ratio 0.
    pub fn mixing_ratio(&self, gas_id: u16, isotope_id: u16) -> f64 {
        let mut wildcard = 0.0;
        for s in &self.species {
            if s.gas_id == gas_id {
                if s.isotope_id == isotope_id {
                    return s.mixing_ratio;
                }
                if s.isotope_id == 0 {
                    wildcard = s.mixing_ratio;
                }
            }
        }
        wildcard
    }

    /// Distinct gas ids present in the composition, ascending.
    pub fn gas_ids(&self) -> Vec<u16> {
        let mut ids: Vec<u16> = self.species.iter().map(|s| s.gas_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// One spectral line in SI units. Widths and shift are at the reference
/// pressure; `gamma` is the temperature exponent of the widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionLine {
    pub gas_id: u16,
    pub isotope_id: u16,
    pub fc0_hz: f64,
    /// Line intensity in Hz m^2 per molecule.
    pub intensity: f64,
    pub delta_hz: f64,
    pub alpha_air_hz: f64,
    pub alpha_gas_hz: f64,
    pub gamma: f64,
}

impl AbsorptionLine {
    fn validate(&self) -> std::result::Result<(), (&'static str, String)> {
        if !(self.fc0_hz.is_finite() && self.fc0_hz > 0.0) {
            return Err(("fc0_hz", format!("must be positive, got {}", self.fc0_hz)));
        }
        if !(self.intensity.is_finite() && self.intensity >= 0.0) {
            return Err(("S", format!("must be non-negative, got {}", self.intensity)));
        }
        if !self.delta_hz.is_finite() {
            return Err(("delta_hz", "must be finite".into()));
        }
        if !(self.alpha_air_hz.is_finite() && self.alpha_air_hz > 0.0) {
            return Err((
                "alpha_air_hz",
                format!("broadening must be positive, got {}", self.alpha_air_hz),
            ));
        }
        if !(self.alpha_gas_hz.is_finite() && self.alpha_gas_hz > 0.0) {
            return Err((
                "alpha_gas_hz",
                format!("broadening must be positive, got {}", self.alpha_gas_hz),
            ));
        }
        if !self.gamma.is_finite() {
            return Err(("gamma", "must be finite".into()));
        }
        Ok(())
    }
}

/// Immutable, validated set of lines sorted by center frequency.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineDatabase {
    lines: Vec<AbsorptionLine>,
}

impl LineDatabase {
    /// Validates, sorts by (fc0, gas, isotope) and rejects duplicate
    /// (gas, isotope, fc0) triples.
    pub fn new(mut lines: Vec<AbsorptionLine>) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            l.validate().map_err(|(field, message)| Error::Parse {
                line: i as u64 + 1,
                field: field.into(),
                message,
            })?;
        }
        lines.sort_by(|a, b| {
            a.fc0_hz
                .total_cmp(&b.fc0_hz)
                .then(a.gas_id.cmp(&b.gas_id))
                .then(a.isotope_id.cmp(&b.isotope_id))
        });
        for w in lines.windows(2) {
            if w[0].fc0_hz == w[1].fc0_hz
                && w[0].gas_id == w[1].gas_id
                && w[0].isotope_id == w[1].isotope_id
            {
                return Err(Error::invalid(format!(
                    "duplicate line (gas {}, isotope {}, fc0 {} Hz)",
                    w[0].gas_id, w[0].isotope_id, w[0].fc0_hz
                )));
            }
        }
        Ok(LineDatabase { lines })
    }

    /// The line list compiled into the library: water and oxygen lines
    /// between 100 GHz and 1.1 THz.
    pub fn bundled() -> Self {
        parse_linelist(BUNDLED_LINELIST).expect("bundled line list is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_linelist(&text)
    }

    /// Loads `path`, else the file named by `TERASIM_LINELIST`, else the
    /// bundled list.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_path(p),
            None => match std::env::var_os(LINELIST_ENV) {
                Some(p) if !p.is_empty() => Self::from_path(Path::new(&p)),
                _ => Ok(Self::bundled()),
            },
        }
    }

    pub fn lines(&self) -> &[AbsorptionLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Lines with center in `[lo_hz, hi_hz]`.
    pub fn window(&self, lo_hz: f64, hi_hz: f64) -> &[AbsorptionLine] {
        let a = self.lines.partition_point(|l| l.fc0_hz < lo_hz);
        let b = self.lines.partition_point(|l| l.fc0_hz <= hi_hz);
        &self.lines[a..b.max(a)]
    }

    /// Distinct gas ids present, ascending.
    pub fn gas_ids(&self) -> Vec<u16> {
        let mut ids: Vec<u16> = self.lines.iter().map(|l| l.gas_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}
