//! Molecular absorption noise and band-integrated noise power.

use super::{absorption_spectrum, ExactOptions, LineDatabase, Medium};
use crate::constants::BOLTZMANN;
use crate::error::{finite, Error, Result};

/// Default quadrature step for [`total_noise_power`].
pub const DEFAULT_NOISE_STEP_HZ: f64 = 1e6;

/// Sky-noise temperature of an absorbing path, `t0 * (1 - exp(-K d))`.
pub fn molecular_noise_temperature(k_per_m: f64, distance_m: f64, t0_k: f64) -> f64 {
    t0_k * (1.0 - (-k_per_m * distance_m).exp())
}

/// Noise power in W over `band = (lo, hi)`: Boltzmann constant times the
/// integral of system plus molecular noise temperature, by the trapezoid
/// rule on a uniform grid no coarser than `step_hz`. The molecular term uses
/// the medium reference temperature.
pub fn total_noise_power(
    band: (f64, f64),
    distance_m: f64,
    t_sys_k: f64,
    medium: &Medium,
    db: &LineDatabase,
    step_hz: f64,
) -> Result<f64> {
    let (lo, hi) = band;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(Error::invalid(format!("invalid band [{lo}, {hi}] Hz")));
    }
    if !(step_hz > 0.0) || !(distance_m >= 0.0) || !(t_sys_k >= 0.0) {
        return Err(Error::invalid("step, distance and system temperature must be non-negative"));
    }
    if hi == lo {
        return Ok(0.0);
    }
    let n = ((hi - lo) / step_hz).ceil().max(1.0) as usize;
    let h = (hi - lo) / n as f64;
    let freqs: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + i as f64 * h }).collect();
    let ks = absorption_spectrum(&freqs, medium, db, &ExactOptions::default())?;
    let t0 = medium.reference_temperature_k();
    let temps: Vec<f64> = ks
        .iter()
        .map(|&k| t_sys_k + molecular_noise_temperature(k, distance_m, t0))
        .collect();
    let inner: f64 = temps[1..n].iter().sum();
    let integral = h * (0.5 * (temps[0] + temps[n]) + inner);
    finite(BOLTZMANN * integral, "noise power")
}
