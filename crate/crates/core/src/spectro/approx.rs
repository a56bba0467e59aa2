//! Closed-form water-vapour absorption fits for sub-THz bands.
//!
//! Both fits are sums of Lorentzian-like terms in wavenumber (cm^-1) plus a
//! polynomial or power-law background and return K in 1/m.

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{finite, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApproxModel {
    /// Two water lines plus a cubic background, 275-400 GHz.
    Band275To400,
    /// Six water lines plus a power-law background, 100-450 GHz.
    Band100To450,
}

impl ApproxModel {
    /// Validity band in Hz.
    pub fn band(self) -> (f64, f64) {
        match self {
            ApproxModel::Band275To400 => (275e9, 400e9),
            ApproxModel::Band100To450 => (100e9, 450e9),
        }
    }
}

/// Approximate K(f) for water-vapour mixing ratio `mu`.
///
/// Out-of-band frequencies are an error unless `force` is set. The result is
/// clamped at zero because the polynomial background can dip negative when
/// forced outside its band.
pub fn approx_absorption(f_hz: f64, mu: f64, model: ApproxModel, force: bool) -> Result<f64> {
    if !(f_hz.is_finite() && f_hz > 0.0) {
        return Err(Error::invalid(format!("frequency must be positive, got {f_hz}")));
    }
    if !(mu.is_finite() && (0.0..=1.0).contains(&mu)) {
        return Err(Error::invalid(format!("mixing ratio must lie in [0, 1], got {mu}")));
    }
    let (lo, hi) = model.band();
    if !force && !(lo..=hi).contains(&f_hz) {
        return Err(Error::OutOfBand {
            frequency_hz: f_hz,
            lo_hz: lo,
            hi_hz: hi,
        });
    }
    let k = match model {
        ApproxModel::Band275To400 => band_275_400(f_hz, mu),
        ApproxModel::Band100To450 => band_100_450(f_hz, mu),
    };
    finite(k.max(0.0), "approximate absorption coefficient")
}

fn wavenumber_cm(f_hz: f64) -> f64 {
    f_hz / (100.0 * SPEED_OF_LIGHT)
}

fn band_275_400(f: f64, mu: f64) -> f64 {
    let w = wavenumber_cm(f);
    let a = 0.2205 * mu * (0.1303 * mu + 0.0294);
    let b = (0.4093 * mu + 0.0925).powi(2);
    let c = 2.014 * mu * (0.1702 * mu + 0.0303);
    let d = (0.537 * mu + 0.0956).powi(2);
    let y1 = a / (b + (w - 10.835).powi(2));
    let y2 = c / (d + (w - 12.664).powi(2));
    let g = 5.54e-37 * f.powi(3) - 3.94e-25 * f.powi(2) + 9.06e-14 * f - 6.36e-3;
    y1 + y2 + g
}

fn band_100_450(f: f64, mu: f64) -> f64 {
    let w = wavenumber_cm(f);
    let dry = 1.0 - mu;
    // (numerator, denominator, center in cm^-1)
    let terms = [
        (
            5.159e-5 * dry * (-6.65e-5 * dry + 0.0159),
            (-2.09e-4 * dry + 0.05).powi(2),
            3.96,
        ),
        (
            0.1925 * mu * (0.1350 * mu + 0.0318),
            (0.4241 * mu + 0.0998).powi(2),
            6.11,
        ),
        (
            0.2251 * mu * (0.1314 * mu + 0.0297),
            (0.4127 * mu + 0.0932).powi(2),
            10.84,
        ),
        (
            2.053 * mu * (0.1717 * mu + 0.0306),
            (0.5394 * mu + 0.0961).powi(2),
            12.68,
        ),
        (
            0.177 * mu * (0.0832 * mu + 0.0213),
            (0.2615 * mu + 0.0668).powi(2),
            14.65,
        ),
        (
            2.146 * mu * (0.1206 * mu + 0.0277),
            (0.3789 * mu + 0.0871).powi(2),
            14.94,
        ),
    ];
    let lines: f64 = terms
        .iter()
        .map(|&(x, y, c)| x / (y + (w - c).powi(2)))
        .sum();
    let background = mu / 0.0157 * (2e-4 + 0.915e-112 * f.powf(9.42));
    lines + background
}
