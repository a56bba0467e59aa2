//! Array-of-subarrays geometry, steering vectors, antenna gain patterns and
//! near-field design distances.
//!
//! Arrays lie in their local y-z plane with boresight along local +x.
//! Subarray (SA) `(m, n)` sits at row `m` along y and column `n` along z and
//! has linear index `m * sa_cols + n`. Antenna elements (AEs) inside an SA
//! use the same convention with `q x q` elements.

mod design;
mod gain;

pub use design::{
    fresnel_bounds, fresnel_region, optimal_sa_spacing, rayleigh_distance, FieldRegion,
};
pub use gain::{antenna_gain, GainModel};

use crate::constants::{wavelength, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::{CVector, Complex64};
use nalgebra::{Matrix3, Rotation3, Vector3};
use std::f64::consts::PI;

/// Direction in an array's local frame. `elevation` is the polar angle
/// from local +z, so boresight is `azimuth = 0, elevation = pi/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub azimuth: f64,
    pub elevation: f64,
}

impl Angles {
    pub const BORESIGHT: Angles = Angles {
        azimuth: 0.0,
        elevation: PI / 2.0,
    };

    pub fn new(azimuth: f64, elevation: f64) -> Self {
        Angles { azimuth, elevation }
    }

    pub fn from_degrees(azimuth_deg: f64, elevation_deg: f64) -> Self {
        Angles::new(azimuth_deg.to_radians(), elevation_deg.to_radians())
    }

    /// Unit vector `(cos az sin el, sin az sin el, cos el)`.
    pub fn unit_vector(&self) -> Vector3<f64> {
        let (sa, ca) = self.azimuth.sin_cos();
        let (se, ce) = self.elevation.sin_cos();
        Vector3::new(ca * se, sa * se, ce)
    }

    /// Angles of a (not necessarily unit) local direction vector.
    pub fn of_vector(v: &Vector3<f64>) -> Self {
        let r = v.norm();
        Angles {
            azimuth: v.y.atan2(v.x),
            elevation: (v.z / r).clamp(-1.0, 1.0).acos(),
        }
    }
}

/// Rotation from an array's local frame to the world frame. Columns are the
/// local x (boresight), y and z axes expressed in world coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    rot: Rotation3<f64>,
}

impl Default for Orientation {
    fn default() -> Self {
        Orientation::identity()
    }
}

impl Orientation {
    pub fn identity() -> Self {
        Orientation {
            rot: Rotation3::identity(),
        }
    }

    /// Yaw about world z, then pitch about the rotated y, then roll about
    /// boresight (radians).
    pub fn from_yaw_pitch_roll(yaw: f64, pitch: f64, roll: f64) -> Self {
        Orientation {
            rot: Rotation3::from_euler_angles(roll, pitch, yaw),
        }
    }

    /// Boresight along `boresight`; local z as close to `up` as possible.
    pub fn facing(boresight: [f64; 3], up: [f64; 3]) -> Result<Self> {
        let x = Vector3::from(boresight);
        let up = Vector3::from(up);
        if x.norm() == 0.0 {
            return Err(Error::invalid("boresight vector is zero"));
        }
        let x = x.normalize();
        let z = up - x * x.dot(&up);
        if z.norm() < 1e-12 {
            return Err(Error::invalid("up vector is parallel to boresight"));
        }
        let z = z.normalize();
        let y = z.cross(&x);
        let m = Matrix3::from_columns(&[x, y, z]);
        Ok(Orientation {
            rot: Rotation3::from_matrix_unchecked(m),
        })
    }

    pub fn to_world(&self, local: &Vector3<f64>) -> Vector3<f64> {
        self.rot * local
    }

    pub fn to_local(&self, world: &Vector3<f64>) -> Vector3<f64> {
        self.rot.inverse() * world
    }

    pub fn boresight(&self) -> Vector3<f64> {
        self.rot * Vector3::x()
    }
}

/// Uniform planar array of `sa_rows x sa_cols` subarrays, each with
/// `q x q` elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    pub sa_rows: usize,
    pub sa_cols: usize,
    pub q: usize,
    /// Center-to-center SA spacing (m).
    pub sa_spacing_m: f64,
    /// AE spacing inside an SA (m).
    pub ae_spacing_m: f64,
    pub carrier_frequency_hz: f64,
    /// World position of the array center (m).
    pub origin: [f64; 3],
    pub orientation: Orientation,
    pub gain: GainModel,
}

/// Position of a subarray in the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SaIndex {
    pub row: usize,
    pub col: usize,
}

impl ArrayConfig {
    /// Array at the origin facing +x with isotropic elements.
    pub fn new(
        sa_rows: usize,
        sa_cols: usize,
        q: usize,
        sa_spacing_m: f64,
        ae_spacing_m: f64,
        carrier_frequency_hz: f64,
    ) -> Self {
        ArrayConfig {
            sa_rows,
            sa_cols,
            q,
            sa_spacing_m,
            ae_spacing_m,
            carrier_frequency_hz,
            origin: [0.0; 3],
            orientation: Orientation::identity(),
            gain: GainModel::Fixed { gain: 1.0 },
        }
    }

    pub fn at(mut self, origin: [f64; 3], orientation: Orientation) -> Self {
        self.origin = origin;
        self.orientation = orientation;
        self
    }

    pub fn with_gain(mut self, gain: GainModel) -> Self {
        self.gain = gain;
        self
    }

    /// Checks invariants. Returns non-fatal warnings, such as AE spacing
    /// above half a wavelength (grating lobes).
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.sa_rows == 0 || self.sa_cols == 0 || self.q == 0 {
            return Err(Error::invalid("array dimensions must be at least 1"));
        }
        if !(self.carrier_frequency_hz.is_finite() && self.carrier_frequency_hz > 0.0) {
            return Err(Error::invalid("carrier frequency must be positive"));
        }
        if !(self.ae_spacing_m.is_finite() && self.ae_spacing_m > 0.0) {
            return Err(Error::invalid("AE spacing must be positive"));
        }
        let sa_extent = self.q as f64 * self.ae_spacing_m;
        let multi = self.sa_rows > 1 || self.sa_cols > 1;
        if multi && !(self.sa_spacing_m.is_finite() && self.sa_spacing_m >= sa_extent * (1.0 - 1e-12)) {
            return Err(Error::invalid(format!(
                "SA spacing {} m is smaller than the SA extent q*delta = {} m",
                self.sa_spacing_m, sa_extent
            )));
        }
        if !self.origin.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("array origin must be finite"));
        }
        self.gain.validate()?;
        let mut warnings = Vec::new();
        let half = self.wavelength() / 2.0;
        if self.ae_spacing_m > half * (1.0 + 1e-12) && self.q > 1 {
            warnings.push(format!(
                "AE spacing {:.6e} m exceeds half a wavelength ({:.6e} m); expect grating lobes",
                self.ae_spacing_m, half
            ));
        }
        Ok(warnings)
    }

    pub fn wavelength(&self) -> f64 {
        wavelength(self.carrier_frequency_hz)
    }

    pub fn num_sas(&self) -> usize {
        self.sa_rows * self.sa_cols
    }

    pub fn aes_per_sa(&self) -> usize {
        self.q * self.q
    }

    pub fn num_aes(&self) -> usize {
        self.num_sas() * self.aes_per_sa()
    }

    pub fn sa_index(&self, linear: usize) -> SaIndex {
        SaIndex {
            row: linear / self.sa_cols,
            col: linear % self.sa_cols,
        }
    }

    fn check_sa(&self, sa: SaIndex) -> Result<()> {
        if sa.row >= self.sa_rows || sa.col >= self.sa_cols {
            return Err(Error::invalid(format!(
                "SA index ({}, {}) out of range for a {}x{} array",
                sa.row, sa.col, self.sa_rows, self.sa_cols
            )));
        }
        Ok(())
    }

    /// SA center in the local frame, relative to the array center.
    pub fn sa_local_center(&self, sa: SaIndex) -> Vector3<f64> {
        let y = (sa.row as f64 - (self.sa_rows as f64 - 1.0) / 2.0) * self.sa_spacing_m;
        let z = (sa.col as f64 - (self.sa_cols as f64 - 1.0) / 2.0) * self.sa_spacing_m;
        Vector3::new(0.0, y, z)
    }

    /// AE offsets from the SA center in the local frame, row-major.
    pub fn ae_local_offsets(&self) -> Vec<Vector3<f64>> {
        let c = (self.q as f64 - 1.0) / 2.0;
        let mut v = Vec::with_capacity(self.aes_per_sa());
        for i in 0..self.q {
            for j in 0..self.q {
                v.push(Vector3::new(
                    0.0,
                    (i as f64 - c) * self.ae_spacing_m,
                    (j as f64 - c) * self.ae_spacing_m,
                ));
            }
        }
        v
    }

    pub fn sa_world_center(&self, sa: SaIndex) -> Vector3<f64> {
        Vector3::from(self.origin) + self.orientation.to_world(&self.sa_local_center(sa))
    }

    /// World positions of the AEs of one SA, row-major.
    pub fn ae_positions(&self, sa: SaIndex) -> Result<Vec<[f64; 3]>> {
        self.validate()?;
        self.check_sa(sa)?;
        let center = self.sa_local_center(sa);
        Ok(self
            .ae_local_offsets()
            .iter()
            .map(|o| {
                let w = Vector3::from(self.origin) + self.orientation.to_world(&(center + o));
                [w.x, w.y, w.z]
            })
            .collect())
    }
}

/// Per-SA steering vector `(1/q) exp(j Phi)` over the AEs of one SA.
pub fn steering_vector(cfg: &ArrayConfig, angles: Angles) -> Result<CVector> {
    cfg.validate()?;
    Ok(steering_vector_at(cfg, angles, cfg.carrier_frequency_hz))
}

/// Analog weights of one SA pointed at `target`. Same construction as the
/// steering vector.
pub fn beamforming_vector(cfg: &ArrayConfig, target: Angles) -> Result<CVector> {
    steering_vector(cfg, target)
}

pub(crate) fn steering_vector_at(cfg: &ArrayConfig, angles: Angles, f_hz: f64) -> CVector {
    let k = 2.0 * PI * f_hz / SPEED_OF_LIGHT;
    let u = angles.unit_vector();
    let scale = 1.0 / cfg.q as f64;
    CVector::from_iterator(
        cfg.aes_per_sa(),
        cfg.ae_local_offsets()
            .iter()
            .map(|o| Complex64::from_polar(scale, k * o.dot(&u))),
    )
}

/// Array factor across SAs when the SA phases are set for `target` but the
/// wave arrives from `truth`, normalized by `sqrt(M N)`. Each SA is
/// represented by its center.
pub fn equivalent_array_gain(cfg: &ArrayConfig, truth: Angles, target: Angles) -> Result<Complex64> {
    equivalent_array_gain_at(cfg, truth, target, cfg.carrier_frequency_hz)
}

/// As [`equivalent_array_gain`] for a subcarrier at `f_hz` while the phase
/// shifters stay tuned to the carrier, so the beam squints.
pub fn equivalent_array_gain_at(
    cfg: &ArrayConfig,
    truth: Angles,
    target: Angles,
    f_hz: f64,
) -> Result<Complex64> {
    cfg.validate()?;
    if !(f_hz.is_finite() && f_hz > 0.0) {
        return Err(Error::invalid("subcarrier frequency must be positive"));
    }
    let k = 2.0 * PI * cfg.carrier_frequency_hz / SPEED_OF_LIGHT;
    let (ut, us) = (truth.unit_vector(), target.unit_vector());
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..cfg.num_sas() {
        let p = cfg.sa_local_center(cfg.sa_index(i));
        let phi_true = beam_split_phase(k * p.dot(&ut), f_hz, cfg.carrier_frequency_hz);
        let phi_target = k * p.dot(&us);
        sum += Complex64::from_polar(1.0, phi_true - phi_target);
    }
    Ok(sum / (cfg.num_sas() as f64).sqrt())
}

/// Phase at subcarrier `f_k` of a path whose phase at the carrier is `phi_c`.
pub fn beam_split_phase(phi_c: f64, f_k: f64, f_c: f64) -> f64 {
    f_k / f_c * phi_c
}
