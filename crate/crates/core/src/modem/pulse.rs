//! Pulse shapes.

use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseSpec {
    /// `a exp(-(t - b)^2 / (2 width^2))` inside symbol period `period`.
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
        period: f64,
    },
    /// Raised-cosine pulse with symbol period `period` and roll-off in [0, 1).
    RaisedCosine { period: f64, rolloff: f64 },
}

impl PulseSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PulseSpec::Gaussian {
                amplitude,
                center,
                width,
                period,
            } => {
                if !(amplitude.is_finite() && center.is_finite()) {
                    return Err(Error::invalid("Gaussian amplitude and center must be finite"));
                }
                if !(width > 0.0 && period > 0.0 && width < period) {
                    return Err(Error::invalid(format!(
                        "Gaussian width must satisfy 0 < width < period, got {width} and {period}"
                    )));
                }
            }
            PulseSpec::RaisedCosine { period, rolloff } => {
                if !(period > 0.0 && (0.0..1.0).contains(&rolloff)) {
                    return Err(Error::invalid(format!(
                        "raised cosine needs period > 0 and roll-off in [0, 1), got {period} and {rolloff}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Relative distance to the raised-cosine singularity below which the
/// analytic limit is returned.
const RC_SINGULAR_EPS: f64 = 1e-9;

/// Pulse value at time `t` (s).
pub fn pulse_sample(spec: &PulseSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    if !t.is_finite() {
        return Err(Error::invalid("time must be finite"));
    }
    Ok(match *spec {
        PulseSpec::Gaussian {
            amplitude,
            center,
            width,
            ..
        } => amplitude * (-(t - center).powi(2) / (2.0 * width * width)).exp(),
        PulseSpec::RaisedCosine { period, rolloff } => {
            let x = t / period;
            let denom = 1.0 - (2.0 * rolloff * x).powi(2);
            if rolloff > 0.0 && denom.abs() < RC_SINGULAR_EPS {
                PI / 4.0 * sinc(1.0 / (2.0 * rolloff))
            } else {
                sinc(x) * (PI * rolloff * x).cos() / denom
            }
        }
    })
}
