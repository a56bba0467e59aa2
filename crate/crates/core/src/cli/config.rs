//! TOML scenario configuration. Unknown keys are rejected everywhere.

use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, GainModel, Orientation};
use crate::spectro::{water_mixing_ratio, ApproxModel, Medium, Species, H2O};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Root seed; `--seed` overrides it.
    pub seed: Option<u64>,
    /// Line-list CSV; falls back to `TERASIM_LINELIST`, then the bundled list.
    pub linelist: Option<PathBuf>,
    #[serde(default)]
    pub medium: MediumConfig,
    pub tx: Option<ArrayToml>,
    pub rx: Option<ArrayToml>,
    pub pathloss: Option<PathlossConfig>,
    pub rayleigh: Option<RayleighConfig>,
    pub rate: Option<RateConfig>,
    pub sense: Option<SenseConfig>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn tx_array(&self) -> Result<ArrayConfig> {
        self.tx
            .as_ref()
            .ok_or_else(|| Error::Config("missing [tx] section".into()))?
            .to_array()
    }

    pub fn rx_array(&self) -> Result<ArrayConfig> {
        self.rx
            .as_ref()
            .ok_or_else(|| Error::Config("missing [rx] section".into()))?
            .to_array()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    #[serde(default = "default_pressure")]
    pub pressure_atm: f64,
    #[serde(default = "default_reference_temperature")]
    pub reference_temperature_k: f64,
    #[serde(default = "default_pressure")]
    pub reference_pressure_atm: f64,
    /// Sets the water-vapour ratio from relative humidity.
    pub relative_humidity_percent: Option<f64>,
    #[serde(default)]
    pub species: Vec<Species>,
}

fn default_temperature() -> f64 {
    296.0
}
fn default_pressure() -> f64 {
    1.0
}
fn default_reference_temperature() -> f64 {
    Medium::REFERENCE_TEMPERATURE_K
}

impl Default for MediumConfig {
    fn default() -> Self {
        MediumConfig {
            temperature_k: default_temperature(),
            pressure_atm: default_pressure(),
            reference_temperature_k: default_reference_temperature(),
            reference_pressure_atm: default_pressure(),
            relative_humidity_percent: None,
            species: Vec::new(),
        }
    }
}

impl MediumConfig {
    pub fn to_medium(&self) -> Result<Medium> {
        let mut m = Medium::with_reference(
            self.temperature_k,
            self.pressure_atm,
            self.reference_temperature_k,
            self.reference_pressure_atm,
        )?;
        for s in &self.species {
            m.add_species(*s)?;
        }
        if let Some(rh) = self.relative_humidity_percent {
            if self.species.iter().any(|s| s.gas_id == H2O) {
                return Err(Error::Config(
                    "give water vapour either as a species or as relative humidity, not both".into(),
                ));
            }
            let mu = water_mixing_ratio(rh, self.temperature_k, self.pressure_atm)?;
            m.add_species(Species {
                gas_id: H2O,
                isotope_id: 0,
                mixing_ratio: mu,
            })?;
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayToml {
    pub sa_rows: usize,
    pub sa_cols: usize,
    #[serde(default = "one")]
    pub q: usize,
    pub sa_spacing_m: f64,
    pub ae_spacing_m: f64,
    pub carrier_frequency_hz: f64,
    #[serde(default)]
    pub origin: [f64; 3],
    #[serde(default)]
    pub yaw_deg: f64,
    #[serde(default)]
    pub pitch_deg: f64,
    #[serde(default)]
    pub roll_deg: f64,
    pub gain: Option<GainModel>,
}

fn one() -> usize {
    1
}

impl ArrayToml {
    pub fn to_array(&self) -> Result<ArrayConfig> {
        let a = ArrayConfig::new(
            self.sa_rows,
            self.sa_cols,
            self.q,
            self.sa_spacing_m,
            self.ae_spacing_m,
            self.carrier_frequency_hz,
        )
        .at(
            self.origin,
            Orientation::from_yaw_pitch_roll(
                self.yaw_deg.to_radians(),
                self.pitch_deg.to_radians(),
                self.roll_deg.to_radians(),
            ),
        )
        .with_gain(self.gain.unwrap_or(GainModel::Fixed { gain: 1.0 }));
        a.validate()?;
        Ok(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AbsorptionChoice {
    #[default]
    Exact,
    #[serde(rename = "approx_275_400")]
    Approx275To400,
    #[serde(rename = "approx_100_450")]
    Approx100To450,
}

impl AbsorptionChoice {
    pub fn approx(self) -> Option<ApproxModel> {
        match self {
            AbsorptionChoice::Exact => None,
            AbsorptionChoice::Approx275To400 => Some(ApproxModel::Band275To400),
            AbsorptionChoice::Approx100To450 => Some(ApproxModel::Band100To450),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathlossConfig {
    pub f_start_hz: f64,
    pub f_stop_hz: f64,
    pub f_step_hz: f64,
    pub distances_m: Vec<f64>,
    #[serde(default)]
    pub model: AbsorptionChoice,
    /// Evaluate approximate models outside their validity band.
    #[serde(default)]
    pub force: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayCounts {
    /// Receive antenna count.
    pub m: usize,
    /// Transmit antenna count.
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub log: bool,
}

impl Sweep {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 || !(self.start > 0.0 || !self.log) || !(self.stop >= self.start) {
            return Err(Error::Config(format!("invalid sweep {self:?}")));
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let n = (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                let t = i as f64 / n;
                if self.log {
                    self.start * (self.stop / self.start).powf(t)
                } else {
                    self.start + (self.stop - self.start) * t
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayleighConfig {
    pub spacing_m: Sweep,
    pub frequencies_hz: Vec<f64>,
    pub arrays: Vec<ArrayCounts>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelSource {
    /// Element-level LoS channel between `[tx]` and `[rx]`.
    Los,
    /// I.i.d. unit-variance Rayleigh entries.
    Rayleigh,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MaskSpec {
    /// `full`, `aosa` or `single`.
    Preset(String),
    /// Row-major SA x RF-chain connection flags.
    Custom { links: Vec<bool> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateConfig {
    pub channel: ChannelSource,
    /// Receive antennas for the Rayleigh channel.
    pub rx_antennas: Option<usize>,
    pub n_rf: usize,
    pub streams: Vec<usize>,
    pub powers_w: Vec<f64>,
    /// Noise power; otherwise integrated from `bandwidth_hz` and
    /// `system_temperature_k` around the carrier at the link distance.
    pub noise_w: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    pub system_temperature_k: Option<f64>,
    pub masks: Vec<MaskSpec>,
    /// Phase-shifter resolution; continuous when absent.
    pub phase_bits: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenseConfig {
    pub unknown_gases: Vec<u16>,
    /// One frequency per SA pair; the advisor fills it from `band_hz` when
    /// absent.
    pub frequencies_hz: Option<Vec<f64>>,
    pub band_hz: Option<[f64; 2]>,
    pub snr_db: Option<f64>,
    #[serde(default = "one")]
    pub trials: usize,
    /// Starting mixing ratio of the unknown gases for collision widths.
    #[serde(default = "default_initial_ratio")]
    pub initial_ratio: f64,
    #[serde(default = "default_refinement")]
    pub refinement_passes: usize,
}

fn default_initial_ratio() -> f64 {
    0.01
}
fn default_refinement() -> usize {
    2
}
