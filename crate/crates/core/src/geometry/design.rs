//! Near-field design distances.

use crate::error::{Error, Result};

/// Propagation region relative to an aperture of size `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRegion {
    ReactiveNearField,
    Fresnel,
    FarField,
}

/// Rayleigh distance `max(M, N) * dr * dt / lambda`, beyond which a MIMO
/// channel between `M` receive and `N` transmit antennas loses spatial
/// degrees of freedom. `M` and `N` are total antenna counts.
pub fn rayleigh_distance(m: usize, n: usize, delta_r: f64, delta_t: f64, lambda: f64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("antenna counts must be positive"));
    }
    if !(delta_r > 0.0 && delta_t > 0.0 && lambda > 0.0) {
        return Err(Error::invalid("spacings and wavelength must be positive"));
    }
    Ok(m.max(n) as f64 * delta_r * delta_t / lambda)
}

/// SA spacing `sqrt(z D lambda / M)` that makes the LoS channel between two
/// `M x M`-SA arrays at distance `D` orthogonal; `z` must be odd.
pub fn optimal_sa_spacing(z: u32, distance_m: f64, lambda: f64, m: usize) -> Result<f64> {
    if z % 2 == 0 {
        return Err(Error::invalid(format!("z must be odd, got {z}")));
    }
    if m == 0 || !(distance_m > 0.0 && lambda > 0.0) {
        return Err(Error::invalid("distance, wavelength and M must be positive"));
    }
    Ok((z as f64 * distance_m * lambda / m as f64).sqrt())
}

/// `(0.62 sqrt(D^3 / lambda), 2 D^2 / lambda)`: inner and outer radius of the
/// radiating near field.
pub fn fresnel_bounds(aperture_m: f64, lambda: f64) -> (f64, f64) {
    (
        0.62 * (aperture_m.powi(3) / lambda).sqrt(),
        2.0 * aperture_m * aperture_m / lambda,
    )
}

pub fn fresnel_region(aperture_m: f64, f_hz: f64, distance_m: f64) -> Result<FieldRegion> {
    if !(aperture_m > 0.0 && f_hz > 0.0 && distance_m >= 0.0) {
        return Err(Error::invalid("aperture and frequency must be positive"));
    }
    let (inner, outer) = fresnel_bounds(aperture_m, crate::constants::wavelength(f_hz));
    Ok(if distance_m < inner {
        FieldRegion::ReactiveNearField
    } else if distance_m < outer {
        FieldRegion::Fresnel
    } else {
        FieldRegion::FarField
    })
}
