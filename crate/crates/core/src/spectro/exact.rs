//! Line-by-line absorption coefficient with a van Vleck-Weisskopf style
//! line shape and thermal (tanh) correction.

use super::{AbsorptionLine, LineDatabase, Medium};
use crate::constants::PhysicalConstants;
use crate::error::{finite, Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    /// Lines whose unshifted center is farther than this from the query
    /// frequency are skipped.
    pub line_cutoff_hz: f64,
    pub constants: PhysicalConstants,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            line_cutoff_hz: 2e12,
            constants: PhysicalConstants::CODATA2018,
        }
    }
}

/// Contribution of one line. `q_density` scales the number density and
/// `q_broadening` enters the collision width; they differ only when building
/// per-gas basis spectra.
fn line_term(
    line: &AbsorptionLine,
    f: f64,
    medium: &Medium,
    q_density: f64,
    q_broadening: f64,
    c: &PhysicalConstants,
) -> f64 {
    let t = medium.temperature_k();
    let p_atm = medium.pressure_atm();
    let p_rel = p_atm / medium.reference_pressure_atm();
    let t_rel = medium.reference_temperature_k() / t;

    let fc = line.fc0_hz + line.delta_hz * p_rel;
    let alpha = ((1.0 - q_broadening) * line.alpha_air_hz + q_broadening * line.alpha_gas_hz)
        * p_rel
        * t_rel.powf(line.gamma);

    // molecules per m^3 of this species, scaled to standard temperature
    let p_pa = p_atm * c.atm_pa;
    let density =
        p_rel * (c.standard_temperature_k / t) * (p_pa / (c.gas_constant * t)) * q_density * c.avogadro;

    let x = c.planck / (2.0 * c.boltzmann * t);
    let thermal = (x * f).tanh() / (x * fc).tanh();
    let ratio = f / fc;
    let a2 = alpha * alpha;
    let lorentz = 1.0 / ((f - fc).powi(2) + a2) + 1.0 / ((f + fc).powi(2) + a2);
    let shape = ratio * thermal * (alpha / PI) * ratio * lorentz;

    density * line.intensity * shape
}

/// Absorption coefficient K(f) in 1/m with default options.
pub fn absorption_coefficient(f_hz: f64, medium: &Medium, db: &LineDatabase) -> Result<f64> {
    absorption_coefficient_with(f_hz, medium, db, &ExactOptions::default())
}

pub fn absorption_coefficient_with(
    f_hz: f64,
    medium: &Medium,
    db: &LineDatabase,
    opts: &ExactOptions,
) -> Result<f64> {
    check_frequency(f_hz)?;
    let k: f64 = db
        .window(f_hz - opts.line_cutoff_hz, f_hz + opts.line_cutoff_hz)
        .iter()
        .map(|l| {
            let q = medium.mixing_ratio(l.gas_id, l.isotope_id);
            if q == 0.0 {
                0.0
            } else {
                line_term(l, f_hz, medium, q, q, &opts.constants)
            }
        })
        .sum();
    finite(k, "absorption coefficient")
}

/// K(f) over a frequency grid, evaluated in parallel; order is preserved.
pub fn absorption_spectrum(
    freqs_hz: &[f64],
    medium: &Medium,
    db: &LineDatabase,
    opts: &ExactOptions,
) -> Result<Vec<f64>> {
    freqs_hz
        .par_iter()
        .map(|&f| absorption_coefficient_with(f, medium, db, opts))
        .collect()
}

/// Absorption of gas `gas_id` per unit mixing ratio, with collision widths
/// evaluated at the composition of `medium`. All isotopes of the gas are
/// summed. K of the gas equals `q * gas_basis(..)` at fixed broadening.
pub fn gas_basis(
    f_hz: f64,
    gas_id: u16,
    medium: &Medium,
    db: &LineDatabase,
    opts: &ExactOptions,
) -> Result<f64> {
    check_frequency(f_hz)?;
    let k: f64 = db
        .window(f_hz - opts.line_cutoff_hz, f_hz + opts.line_cutoff_hz)
        .iter()
        .filter(|l| l.gas_id == gas_id)
        .map(|l| {
            let qb = medium.mixing_ratio(l.gas_id, l.isotope_id);
            line_term(l, f_hz, medium, 1.0, qb, &opts.constants)
        })
        .sum();
    finite(k, "gas basis spectrum")
}

fn check_frequency(f_hz: f64) -> Result<()> {
    if f_hz.is_finite() && f_hz > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("frequency must be positive, got {f_hz}")))
    }
}
