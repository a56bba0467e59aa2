//! Free-space line-of-sight paths with molecular absorption.

use super::{ChannelKind, ChannelMatrix};
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{finite, Error, Result};
use crate::geometry::{antenna_gain, steering_vector_at, Angles, ArrayConfig};
use crate::spectro::{absorption_coefficient, LineDatabase, Medium};
use crate::{CMatrix, Complex64};
use nalgebra::Vector3;
use std::f64::consts::PI;

/// Complex LoS gain `c/(4 pi f d) exp(-K d / 2) exp(-j 2 pi f d / c)`.
pub fn los_path_gain(f_hz: f64, d_m: f64, medium: &Medium, db: &LineDatabase) -> Result<Complex64> {
    let k = absorption_coefficient(f_hz, medium, db)?;
    los_path_gain_from_k(f_hz, d_m, k)
}

/// As [`los_path_gain`] with a precomputed absorption coefficient.
pub fn los_path_gain_from_k(f_hz: f64, d_m: f64, k_per_m: f64) -> Result<Complex64> {
    if !(f_hz.is_finite() && f_hz > 0.0) {
        return Err(Error::invalid(format!("frequency must be positive, got {f_hz}")));
    }
    if !(d_m.is_finite() && d_m > 0.0) {
        return Err(Error::invalid(format!("distance must be positive, got {d_m}")));
    }
    if !(k_per_m.is_finite() && k_per_m >= 0.0) {
        return Err(Error::invalid(format!("absorption coefficient must be non-negative, got {k_per_m}")));
    }
    let amp = SPEED_OF_LIGHT / (4.0 * PI * f_hz * d_m) * (-k_per_m * d_m / 2.0).exp();
    let phase = -2.0 * PI * f_hz * d_m / SPEED_OF_LIGHT;
    finite(amp, "path gain")?;
    Ok(Complex64::from_polar(amp, phase))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkOptions {
    /// Require each array's boresight to point into the other's half space.
    pub require_facing: bool,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions {
            require_facing: true,
        }
    }
}

pub(crate) fn check_link(tx: &ArrayConfig, rx: &ArrayConfig, opts: LinkOptions) -> Result<()> {
    tx.validate()?;
    rx.validate()?;
    let (ft, fr) = (tx.carrier_frequency_hz, rx.carrier_frequency_hz);
    if ((ft - fr) / ft).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "tx and rx carriers differ ({ft} Hz vs {fr} Hz)"
        )));
    }
    if tx.q != rx.q {
        return Err(Error::invalid(format!(
            "tx and rx SAs must have the same element count (q = {} vs {})",
            tx.q, rx.q
        )));
    }
    if opts.require_facing {
        let v = Vector3::from(rx.origin) - Vector3::from(tx.origin);
        if tx.orientation.boresight().dot(&v) <= 0.0 || rx.orientation.boresight().dot(&-v) <= 0.0 {
            return Err(Error::invalid(
                "arrays do not face each other (boresights must point into each other's half space)",
            ));
        }
    }
    Ok(())
}

/// Response between tx SA `t` and rx SA `r` at `f_hz`:
/// `a_r^H G_r alpha G_t a_t` with angles from the SA-center geometry.
pub(crate) fn pair_link(
    tx: &ArrayConfig,
    t: usize,
    rx: &ArrayConfig,
    r: usize,
    f_hz: f64,
    k_per_m: f64,
) -> Result<Complex64> {
    let pt = tx.sa_world_center(tx.sa_index(t));
    let pr = rx.sa_world_center(rx.sa_index(r));
    let v = pr - pt;
    let d = v.norm();
    if d == 0.0 {
        return Err(Error::invalid(format!("tx SA {t} and rx SA {r} overlap")));
    }
    let aod = Angles::of_vector(&tx.orientation.to_local(&v));
    let aoa = Angles::of_vector(&rx.orientation.to_local(&-v));
    let a_t = steering_vector_at(tx, aod, f_hz);
    let a_r = steering_vector_at(rx, aoa, f_hz);
    let alpha = los_path_gain_from_k(f_hz, d, k_per_m)?;
    let g = antenna_gain(&rx.gain, aoa) * antenna_gain(&tx.gain, aod);
    Ok(a_r.dotc(&a_t) * alpha * g)
}

/// SA-level LoS channel (`rx SAs x tx SAs`) at the tx carrier frequency.
pub fn los_channel(
    tx: &ArrayConfig,
    rx: &ArrayConfig,
    medium: &Medium,
    db: &LineDatabase,
) -> Result<ChannelMatrix> {
    let k = absorption_coefficient(tx.carrier_frequency_hz, medium, db)?;
    los_channel_with(tx, rx, k, LinkOptions::default())
}

pub fn los_channel_with(
    tx: &ArrayConfig,
    rx: &ArrayConfig,
    k_per_m: f64,
    opts: LinkOptions,
) -> Result<ChannelMatrix> {
    check_link(tx, rx, opts)?;
    let f = tx.carrier_frequency_hz;
    let mut h = CMatrix::zeros(rx.num_sas(), tx.num_sas());
    for r in 0..rx.num_sas() {
        for t in 0..tx.num_sas() {
            h[(r, t)] = pair_link(tx, t, rx, r, f, k_per_m)?;
        }
    }
    Ok(ChannelMatrix {
        entries: h,
        frequency_hz: f,
        distance_m: (Vector3::from(rx.origin) - Vector3::from(tx.origin)).norm(),
        kind: ChannelKind::Los,
    })
}

/// Element-level LoS channel (`rx AEs x tx AEs`) with exact per-element
/// distances; rows and columns are SA-major.
pub fn ae_level_channel(
    tx: &ArrayConfig,
    rx: &ArrayConfig,
    medium: &Medium,
    db: &LineDatabase,
) -> Result<ChannelMatrix> {
    check_link(tx, rx, LinkOptions::default())?;
    let f = tx.carrier_frequency_hz;
    let k = absorption_coefficient(f, medium, db)?;
    let collect = |a: &ArrayConfig| -> Result<Vec<Vector3<f64>>> {
        let mut v = Vec::with_capacity(a.num_aes());
        for s in 0..a.num_sas() {
            v.extend(a.ae_positions(a.sa_index(s))?.into_iter().map(Vector3::from));
        }
        Ok(v)
    };
    let (pt, pr) = (collect(tx)?, collect(rx)?);
    let mut h = CMatrix::zeros(pr.len(), pt.len());
    for (i, r) in pr.iter().enumerate() {
        for (j, t) in pt.iter().enumerate() {
            let v = r - t;
            let aod = Angles::of_vector(&tx.orientation.to_local(&v));
            let aoa = Angles::of_vector(&rx.orientation.to_local(&-v));
            let g = antenna_gain(&rx.gain, aoa) * antenna_gain(&tx.gain, aod);
            h[(i, j)] = los_path_gain_from_k(f, v.norm(), k)? * g;
        }
    }
    Ok(ChannelMatrix {
        entries: h,
        frequency_hz: f,
        distance_m: (Vector3::from(rx.origin) - Vector3::from(tx.origin)).norm(),
        kind: ChannelKind::Los,
    })
}
