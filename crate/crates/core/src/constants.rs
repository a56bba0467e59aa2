//! Physical constants (CODATA 2018 exact values where defined).

use serde::{Deserialize, Serialize};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Planck constant (J s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Molar gas constant (J/(mol K)).
pub const GAS_CONSTANT: f64 = 8.314_462_618;
/// Avogadro constant (1/mol).
pub const AVOGADRO: f64 = 6.022_140_76e23;
/// Standard temperature (K).
pub const STANDARD_TEMPERATURE: f64 = 273.15;
/// One standard atmosphere in pascal.
pub const ATM_PA: f64 = 101_325.0;

/// Constant set used by the line-by-line absorption model.
///
/// Kept as a value so the standard temperature can be overridden; some
/// spectroscopy references normalize number density to 296 K instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicalConstants {
    pub speed_of_light: f64,
    pub boltzmann: f64,
    pub planck: f64,
    pub gas_constant: f64,
    pub avogadro: f64,
    pub standard_temperature_k: f64,
    pub atm_pa: f64,
}

impl PhysicalConstants {
    pub const CODATA2018: PhysicalConstants = PhysicalConstants {
        speed_of_light: SPEED_OF_LIGHT,
        boltzmann: BOLTZMANN,
        planck: PLANCK,
        gas_constant: GAS_CONSTANT,
        avogadro: AVOGADRO,
        standard_temperature_k: STANDARD_TEMPERATURE,
        atm_pa: ATM_PA,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA2018
    }
}

/// Free-space wavelength at frequency `f_hz`.
pub fn wavelength(f_hz: f64) -> f64 {
    SPEED_OF_LIGHT / f_hz
}
