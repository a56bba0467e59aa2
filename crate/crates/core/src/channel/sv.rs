//! Saleh-Valenzuela clustered multipath.

use super::{ChannelKind, ChannelMatrix};
use super::los::check_link;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::geometry::{antenna_gain, steering_vector_at, Angles, ArrayConfig};
use crate::random::{complex_normal, rng, SimRng};
use crate::spectro::{absorption_coefficient, LineDatabase, Medium};
use crate::{CMatrix, Complex64};
use nalgebra::Vector3;
use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};
use std::f64::consts::PI;

/// Two-component zero-mean Gaussian mixture for angular offsets (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMixture {
    /// Probability of the first component.
    pub weight: f64,
    pub std_devs: [f64; 2],
}

impl GaussianMixture {
    pub fn single(std_dev: f64) -> Self {
        GaussianMixture {
            weight: 1.0,
            std_devs: [std_dev, std_dev],
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.weight) || self.std_devs.iter().any(|s| !(*s >= 0.0)) {
            return Err(Error::invalid(format!("invalid Gaussian mixture {self:?}")));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut SimRng) -> f64 {
        let pick: f64 = rng.random();
        let s = if pick < self.weight {
            self.std_devs[0]
        } else {
            self.std_devs[1]
        };
        let z: f64 = rng.sample(StandardNormal);
        s * z
    }
}

/// Cluster-mean angle ranges and per-ray spreads seen from one array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularProfile {
    pub azimuth_range: [f64; 2],
    pub elevation_range: [f64; 2],
    pub azimuth_spread: GaussianMixture,
    pub elevation_spread: GaussianMixture,
}

impl Default for AngularProfile {
    fn default() -> Self {
        AngularProfile {
            azimuth_range: [-PI / 2.0, PI / 2.0],
            elevation_range: [PI / 4.0, 3.0 * PI / 4.0],
            azimuth_spread: GaussianMixture::single(5f64.to_radians()),
            elevation_spread: GaussianMixture::single(5f64.to_radians()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvProfile {
    pub clusters: usize,
    pub rays_per_cluster: usize,
    /// Cluster arrival rate (1/s).
    pub cluster_rate: f64,
    /// Ray arrival rate within a cluster (1/s).
    pub ray_rate: f64,
    /// Cluster power decay constant (s).
    pub cluster_decay: f64,
    /// Ray power decay constant (s).
    pub ray_decay: f64,
    pub tx: AngularProfile,
    pub rx: AngularProfile,
    pub seed: u64,
}

impl Default for SvProfile {
    fn default() -> Self {
        SvProfile {
            clusters: 4,
            rays_per_cluster: 5,
            cluster_rate: 1.0 / 10e-9,
            ray_rate: 1.0 / 1e-9,
            cluster_decay: 5e-9,
            ray_decay: 2e-9,
            tx: AngularProfile::default(),
            rx: AngularProfile::default(),
            seed: 0,
        }
    }
}

impl SvProfile {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cluster_rate", self.cluster_rate),
            ("ray_rate", self.ray_rate),
            ("cluster_decay", self.cluster_decay),
            ("ray_decay", self.ray_decay),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive, got {v}")));
            }
        }
        for p in [&self.tx, &self.rx] {
            p.azimuth_spread.validate()?;
            p.elevation_spread.validate()?;
        }
        Ok(())
    }
}

/// One multipath component. `fading` has unit mean power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub cluster: usize,
    pub cluster_delay_s: f64,
    pub ray_delay_s: f64,
    pub aod: Angles,
    pub aoa: Angles,
    pub fading: Complex64,
}

fn uniform(rng: &mut SimRng, range: [f64; 2]) -> f64 {
    let u: f64 = rng.random();
    range[0] + (range[1] - range[0]) * u
}

fn perturb(mean: Angles, p: &AngularProfile, rng: &mut SimRng) -> Angles {
    let az = mean.azimuth + p.azimuth_spread.sample(rng);
    let el = (mean.elevation + p.elevation_spread.sample(rng)).clamp(0.0, PI);
    Angles::new((az + PI).rem_euclid(2.0 * PI) - PI, el)
}

/// Draws all rays of a profile. The first cluster and the first ray of each
/// cluster arrive with zero excess delay; later arrivals are exponential.
pub fn draw_rays(profile: &SvProfile) -> Result<Vec<Ray>> {
    profile.validate()?;
    let mut r = rng(profile.seed);
    let cluster_gap = Exp::new(profile.cluster_rate).map_err(|e| Error::invalid(e.to_string()))?;
    let ray_gap = Exp::new(profile.ray_rate).map_err(|e| Error::invalid(e.to_string()))?;
    let mut rays = Vec::with_capacity(profile.clusters * profile.rays_per_cluster);
    let mut tau = 0.0;
    for v in 0..profile.clusters {
        if v > 0 {
            tau += cluster_gap.sample(&mut r);
        }
        let mean_tx = Angles::new(
            uniform(&mut r, profile.tx.azimuth_range),
            uniform(&mut r, profile.tx.elevation_range),
        );
        let mean_rx = Angles::new(
            uniform(&mut r, profile.rx.azimuth_range),
            uniform(&mut r, profile.rx.elevation_range),
        );
        let mut tau_ray = 0.0;
        for u in 0..profile.rays_per_cluster {
            if u > 0 {
                tau_ray += ray_gap.sample(&mut r);
            }
            let aod = perturb(mean_tx, &profile.tx, &mut r);
            let aoa = perturb(mean_rx, &profile.rx, &mut r);
            let fading = complex_normal(&mut r, 1.0);
            rays.push(Ray {
                cluster: v,
                cluster_delay_s: tau,
                ray_delay_s: tau_ray,
                aod,
                aoa,
                fading,
            });
        }
    }
    Ok(rays)
}

/// Mean power `(c/(4 pi f d))^2 exp(-K d) exp(-tau/Gamma) exp(-tau_ray/gamma)`
/// of one ray.
pub fn sv_mean_power(
    f_hz: f64,
    d_m: f64,
    k_per_m: f64,
    cluster_delay_s: f64,
    ray_delay_s: f64,
    profile: &SvProfile,
) -> f64 {
    (SPEED_OF_LIGHT / (4.0 * PI * f_hz * d_m)).powi(2)
        * (-k_per_m * d_m).exp()
        * (-cluster_delay_s / profile.cluster_decay).exp()
        * (-ray_delay_s / profile.ray_decay).exp()
}

/// SA-level NLoS channel: sum over clusters and rays of
/// `a_r^H(aoa) G_r alpha G_t a_t(aod)`, where each SA pair sees the ray with
/// its own center-to-center distance and the ray's excess delay.
pub fn sv_nlos_channel(
    tx: &ArrayConfig,
    rx: &ArrayConfig,
    medium: &Medium,
    db: &LineDatabase,
    profile: &SvProfile,
) -> Result<ChannelMatrix> {
    check_link(tx, rx, super::LinkOptions { require_facing: false })?;
    let f = tx.carrier_frequency_hz;
    let k = absorption_coefficient(f, medium, db)?;
    let rays = draw_rays(profile)?;
    let per_ray: Vec<(Complex64, f64)> = rays
        .iter()
        .map(|ray| {
            let a_t = steering_vector_at(tx, ray.aod, f);
            let a_r = steering_vector_at(rx, ray.aoa, f);
            let g = antenna_gain(&rx.gain, ray.aoa) * antenna_gain(&tx.gain, ray.aod);
            (a_r.dotc(&a_t) * g, ray.cluster_delay_s + ray.ray_delay_s)
        })
        .collect();
    let mut h = CMatrix::zeros(rx.num_sas(), tx.num_sas());
    for r in 0..rx.num_sas() {
        let pr = rx.sa_world_center(rx.sa_index(r));
        for t in 0..tx.num_sas() {
            let d = (pr - tx.sa_world_center(tx.sa_index(t))).norm();
            if d == 0.0 {
                return Err(Error::invalid(format!("tx SA {t} and rx SA {r} overlap")));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (ray, &(resp, delay)) in rays.iter().zip(&per_ray) {
                let p = sv_mean_power(f, d, k, ray.cluster_delay_s, ray.ray_delay_s, profile);
                let phase = -2.0 * PI * f * (d / SPEED_OF_LIGHT + delay);
                acc += resp * ray.fading * Complex64::from_polar(p.sqrt(), phase);
            }
            h[(r, t)] = acc;
        }
    }
    Ok(ChannelMatrix {
        entries: h,
        frequency_hz: f,
        distance_m: (Vector3::from(rx.origin) - Vector3::from(tx.origin)).norm(),
        kind: ChannelKind::Nlos,
    })
}
