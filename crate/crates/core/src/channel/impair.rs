//! Beam misalignment, small-scale fading and transceiver impairments.

use super::ChannelMatrix;
use crate::error::{Error, Result};
use crate::random::{complex_normal, rng};
use crate::{CMatrix, CVector, Complex64};
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

/// Radial displacement of the beam footprint from the receiver center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialOffset {
    Fixed { r_m: f64 },
    /// Two-dimensional Gaussian pointing jitter with per-axis standard
    /// deviation `sigma_rad`; the offset is `d * tan(error)`.
    AngularJitter { sigma_rad: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisalignmentConfig {
    /// Fraction of power collected at zero offset.
    pub a0: f64,
    /// Equivalent beam width at the receiver (m).
    pub w_eq_m: f64,
    pub offset: RadialOffset,
    pub seed: u64,
}

/// Pointing-error gain `a0 exp(-2 r^2 / w_eq^2)` for link distance `d_m`.
pub fn misalignment_factor(cfg: &MisalignmentConfig, d_m: f64) -> Result<f64> {
    if !(cfg.a0 > 0.0 && cfg.a0 <= 1.0) {
        return Err(Error::invalid(format!("a0 must lie in (0, 1], got {}", cfg.a0)));
    }
    if !(cfg.w_eq_m > 0.0) || !(d_m >= 0.0) {
        return Err(Error::invalid("beam width must be positive and distance non-negative"));
    }
    let r = match cfg.offset {
        RadialOffset::Fixed { r_m } => {
            if !(r_m >= 0.0) {
                return Err(Error::invalid("radial offset must be non-negative"));
            }
            r_m
        }
        RadialOffset::AngularJitter { sigma_rad } => {
            if !(sigma_rad >= 0.0) {
                return Err(Error::invalid("jitter must be non-negative"));
            }
            let mut g = rng(cfg.seed);
            let ex: f64 = g.sample(StandardNormal);
            let ey: f64 = g.sample(StandardNormal);
            d_m * (sigma_rad * ex.hypot(ey)).tan().abs()
        }
    };
    Ok(cfg.a0 * (-2.0 * r * r / (cfg.w_eq_m * cfg.w_eq_m)).exp())
}

/// Small-scale fading applied entry-wise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StochasticGain {
    Unity,
    /// Alpha-mu envelope with unit alpha-root mean.
    AlphaMu { alpha: f64, mu: f64 },
}

/// `h * h_ma * h_st` entry-wise, with `h_st` drawn from `seed`.
pub fn effective_channel(
    h: &ChannelMatrix,
    mis: &MisalignmentConfig,
    fading: StochasticGain,
    seed: u64,
) -> Result<ChannelMatrix> {
    let ma = misalignment_factor(mis, h.distance_m)?;
    let mut out = h.clone();
    match fading {
        StochasticGain::Unity => out.entries *= Complex64::new(ma, 0.0),
        StochasticGain::AlphaMu { alpha, mu } => {
            if !(alpha > 0.0 && mu > 0.0) {
                return Err(Error::invalid("alpha and mu must be positive"));
            }
            let gamma = Gamma::new(mu, 1.0 / mu).map_err(|e| Error::invalid(e.to_string()))?;
            let mut g = rng(seed);
            for z in out.entries.iter_mut() {
                let env = gamma.sample(&mut g).powf(1.0 / alpha);
                *z *= ma * env;
            }
        }
    }
    Ok(out)
}

/// Error-vector magnitudes of the transmitter and receiver and the
/// transmit power per symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpairmentConfig {
    pub eta_t: f64,
    pub eta_r: f64,
    pub tx_power: f64,
    pub seed: u64,
}

/// Received vector and the three noise terms that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Reception {
    pub y: CVector,
    pub tx_distortion: CVector,
    pub rx_distortion: CVector,
    pub noise: CVector,
}

/// `y = H (x + n_t) + n_f + n` with `n_t ~ CN(0, eta_t^2 p)`,
/// `n_f[i] ~ CN(0, eta_r^2 p mean_j |H_ij|^2)` and `n ~ CN(0, sigma2)`.
pub fn apply_impairments(
    h: &CMatrix,
    x: &CVector,
    cfg: &ImpairmentConfig,
    noise_var: f64,
) -> Result<Reception> {
    if h.ncols() != x.len() {
        return Err(Error::invalid(format!(
            "channel has {} columns but x has {} entries",
            h.ncols(),
            x.len()
        )));
    }
    if !(cfg.eta_t >= 0.0 && cfg.eta_r >= 0.0 && cfg.tx_power >= 0.0 && noise_var >= 0.0) {
        return Err(Error::invalid("impairment levels, power and noise must be non-negative"));
    }
    let mut g = rng(cfg.seed);
    let vt = cfg.eta_t * cfg.eta_t * cfg.tx_power;
    let tx_distortion = CVector::from_fn(x.len(), |_, _| complex_normal(&mut g, vt));
    let rx_distortion = CVector::from_fn(h.nrows(), |i, _| {
        let row_energy = h.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>() / h.ncols().max(1) as f64;
        complex_normal(&mut g, cfg.eta_r * cfg.eta_r * cfg.tx_power * row_energy)
    });
    let noise = CVector::from_fn(h.nrows(), |_, _| complex_normal(&mut g, noise_var));
    let y = h * (x + &tx_distortion) + &rx_distortion + &noise;
    Ok(Reception {
        y,
        tx_distortion,
        rx_distortion,
        noise,
    })
}
