//! Antenna element gain patterns (amplitude, i.e. square root of power gain).

use super::Angles;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum GainModel {
    /// Constant power gain in every direction.
    Fixed { gain: f64 },
    /// Power gain `peak` inside the angular sector, zero outside.
    /// Azimuth bounds may wrap through +-pi when `lo > hi`.
    Sector {
        azimuth: [f64; 2],
        elevation: [f64; 2],
        peak: f64,
    },
    /// Sector around boresight with the given half-power beamwidths; the
    /// peak gain is `4 pi / (hpbw_azimuth * hpbw_elevation)`.
    Approximate {
        hpbw_azimuth: f64,
        hpbw_elevation: f64,
    },
}

impl GainModel {
    /// Sector whose peak gain follows from its solid-angle extent.
    pub fn sector(azimuth: [f64; 2], elevation: [f64; 2]) -> Self {
        let width_az = (azimuth[1] - azimuth[0]).rem_euclid(2.0 * PI);
        let width_el = elevation[1] - elevation[0];
        GainModel::Sector {
            azimuth,
            elevation,
            peak: 4.0 * PI / (width_az * width_el),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            GainModel::Fixed { gain } => gain.is_finite() && gain >= 0.0,
            GainModel::Sector {
                azimuth,
                elevation,
                peak,
            } => {
                peak.is_finite()
                    && peak >= 0.0
                    && azimuth.iter().all(|a| a.is_finite())
                    && elevation[0] <= elevation[1]
                    && elevation[0] >= 0.0
                    && elevation[1] <= PI
            }
            GainModel::Approximate {
                hpbw_azimuth,
                hpbw_elevation,
            } => {
                hpbw_azimuth > 0.0
                    && hpbw_elevation > 0.0
                    && hpbw_azimuth <= 2.0 * PI
                    && hpbw_elevation <= PI
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("invalid gain model {self:?}")))
        }
    }

    /// Peak power gain (linear).
    pub fn peak_gain(&self) -> f64 {
        match *self {
            GainModel::Fixed { gain } => gain,
            GainModel::Sector { peak, .. } => peak,
            GainModel::Approximate {
                hpbw_azimuth,
                hpbw_elevation,
            } => 4.0 * PI / (hpbw_azimuth * hpbw_elevation),
        }
    }

    pub fn peak_gain_dbi(&self) -> f64 {
        10.0 * self.peak_gain().log10()
    }
}

fn wrap(a: f64) -> f64 {
    let w = (a + PI).rem_euclid(2.0 * PI) - PI;
    if w == -PI {
        PI
    } else {
        w
    }
}

fn in_azimuth(az: f64, lo: f64, hi: f64) -> bool {
    let (az, lo, hi) = (wrap(az), wrap(lo), wrap(hi));
    if lo <= hi {
        (lo..=hi).contains(&az)
    } else {
        az >= lo || az <= hi
    }
}

/// Amplitude gain `sqrt(G)` toward `angles` (local frame).
pub fn antenna_gain(model: &GainModel, angles: Angles) -> f64 {
    let inside = match *model {
        GainModel::Fixed { .. } => true,
        GainModel::Sector {
            azimuth, elevation, ..
        } => {
            in_azimuth(angles.azimuth, azimuth[0], azimuth[1])
                && (elevation[0]..=elevation[1]).contains(&angles.elevation)
        }
        GainModel::Approximate {
            hpbw_azimuth,
            hpbw_elevation,
        } => {
            wrap(angles.azimuth).abs() <= hpbw_azimuth / 2.0
                && (angles.elevation - PI / 2.0).abs() <= hpbw_elevation / 2.0
        }
    };
    if inside {
        model.peak_gain().sqrt()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_wraps_through_pi() {
        let m = GainModel::Sector {
            azimuth: [3.0, -3.0],
            elevation: [0.0, PI],
            peak: 4.0,
        };
        assert_eq!(antenna_gain(&m, Angles::new(PI, 1.0)), 2.0);
        assert_eq!(antenna_gain(&m, Angles::new(0.0, 1.0)), 0.0);
    }

    #[test]
    fn approximate_is_zero_outside_beam() {
        let w = 20f64.to_radians();
        let m = GainModel::Approximate {
            hpbw_azimuth: w,
            hpbw_elevation: w,
        };
        assert!(antenna_gain(&m, Angles::BORESIGHT) > 0.0);
        assert_eq!(antenna_gain(&m, Angles::new(0.5, PI / 2.0)), 0.0);
    }
}
