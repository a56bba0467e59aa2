//! Water-vapour mixing ratio from relative humidity (Buck saturation formula).

use crate::constants::STANDARD_TEMPERATURE;
use crate::error::{Error, Result};

/// Saturation vapour pressure over water in hPa (temperature in deg C,
/// total pressure in hPa).
pub fn saturation_vapor_pressure_hpa(t_celsius: f64, p_hpa: f64) -> f64 {
    6.1121 * (1.0007 + 3.46e-6 * p_hpa) * (17.502 * t_celsius / (240.97 + t_celsius)).exp()
}

/// Volume mixing ratio of water vapour at relative humidity `rh_percent`.
/// 50 % at 25 deg C and 1 atm gives about 0.0157.
pub fn water_mixing_ratio(rh_percent: f64, temperature_k: f64, pressure_atm: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&rh_percent) {
        return Err(Error::invalid(format!(
            "relative humidity must lie in [0, 100] %, got {rh_percent}"
        )));
    }
    if !(temperature_k > 0.0 && pressure_atm > 0.0) {
        return Err(Error::invalid("temperature and pressure must be positive"));
    }
    let p_hpa = pressure_atm * 1013.25;
    let pw = saturation_vapor_pressure_hpa(temperature_k - STANDARD_TEMPERATURE, p_hpa);
    let mu = rh_percent / 100.0 * pw / p_hpa;
    if mu > 1.0 {
        return Err(Error::invalid("vapour pressure exceeds total pressure"));
    }
    Ok(mu)
}
