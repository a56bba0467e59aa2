//! Diagonal sensing channel, observations and absorption extraction.

use crate::channel::{pair_link, ChannelKind, ChannelMatrix};
use crate::error::{Error, Result};
use crate::geometry::ArrayConfig;
use crate::random::{complex_normal, stream};
use crate::spectro::{absorption_coefficient, LineDatabase, Medium};
use crate::{CMatrix, Complex64};
use std::io::{Read, Write};

/// One frequency per SA pair; pair `i` joins tx SA `i` and rx SA `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPlan {
    pub frequencies_hz: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensingModel {
    /// Diagonal channel; entry `i` is pair `i` at its own frequency.
    pub channel: ChannelMatrix,
    pub frequencies_hz: Vec<f64>,
    pub distances_m: Vec<f64>,
    /// Pair responses without absorption.
    pub geometric: Vec<Complex64>,
}

/// Builds the diagonal channel `h_ii = a_r^H G_r alpha(f_i, d_ii) G_t a_t`.
pub fn build_sensing_model(
    tx: &ArrayConfig,
    rx: &ArrayConfig,
    medium: &Medium,
    db: &LineDatabase,
    plan: &FrequencyPlan,
) -> Result<SensingModel> {
    crate::channel::los_channel_with(tx, rx, 0.0, Default::default())?;
    let n = tx.num_sas();
    if rx.num_sas() != n {
        return Err(Error::invalid(format!(
            "tx has {n} SAs but rx has {}; sensing pairs SAs one to one",
            rx.num_sas()
        )));
    }
    if plan.frequencies_hz.len() != n {
        return Err(Error::invalid(format!(
            "plan has {} frequencies for {n} SA pairs",
            plan.frequencies_hz.len()
        )));
    }
    let mut entries = CMatrix::zeros(n, n);
    let mut distances = Vec::with_capacity(n);
    let mut geometric = Vec::with_capacity(n);
    for (i, &f) in plan.frequencies_hz.iter().enumerate() {
        let k = absorption_coefficient(f, medium, db)?;
        entries[(i, i)] = pair_link(tx, i, rx, i, f, k)?;
        geometric.push(pair_link(tx, i, rx, i, f, 0.0)?);
        distances.push((rx.sa_world_center(rx.sa_index(i)) - tx.sa_world_center(tx.sa_index(i))).norm());
    }
    Ok(SensingModel {
        channel: ChannelMatrix {
            entries,
            frequency_hz: plan.frequencies_hz[0],
            distance_m: distances.iter().sum::<f64>() / n as f64,
            kind: ChannelKind::Los,
        },
        frequencies_hz: plan.frequencies_hz.clone(),
        distances_m: distances,
        geometric,
    })
}

/// Measured response of one SA pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensingObservation {
    pub pair: usize,
    pub frequency_hz: f64,
    pub distance_m: f64,
    pub h_meas: Complex64,
}

/// Observations of every pair with complex Gaussian noise at `snr_db`
/// relative to each pair's own power (noise-free when `None`). Trial `trial`
/// draws from its own stream of `seed`.
pub fn synthesize_observations(
    model: &SensingModel,
    snr_db: Option<f64>,
    seed: u64,
    trial: u64,
) -> Vec<SensingObservation> {
    let mut rng = stream(seed, trial);
    (0..model.frequencies_hz.len())
        .map(|i| {
            let h = model.channel.entries[(i, i)];
            let noise = match snr_db {
                Some(snr) => complex_normal(&mut rng, h.norm_sqr() / 10f64.powf(snr / 10.0)),
                None => Complex64::new(0.0, 0.0),
            };
            SensingObservation {
                pair: i,
                frequency_hz: model.frequencies_hz[i],
                distance_m: model.distances_m[i],
                h_meas: h + noise,
            }
        })
        .collect()
}

/// Absorption coefficient inferred from one observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionSample {
    pub pair: usize,
    pub frequency_hz: f64,
    pub distance_m: f64,
    pub k_hat: f64,
    /// The measured magnitude exceeded the geometric one, so `k_hat` was
    /// clipped to zero.
    pub clipped: bool,
}

/// `K = -(2/d) ln(|h_meas| / |h_geo|)` per observation, clipped at zero.
/// `geometric[pair]` is the absorption-free response of each pair.
pub fn extract_absorption(
    observations: &[SensingObservation],
    geometric: &[Complex64],
) -> Result<Vec<AbsorptionSample>> {
    observations
        .iter()
        .map(|o| {
            let g = geometric
                .get(o.pair)
                .ok_or_else(|| Error::invalid(format!("no geometric gain for pair {}", o.pair)))?
                .norm();
            if g == 0.0 || !g.is_finite() {
                return Err(Error::invalid(format!("geometric gain of pair {} is zero", o.pair)));
            }
            if !(o.distance_m > 0.0) {
                return Err(Error::invalid(format!("pair {} distance must be positive", o.pair)));
            }
            let m = o.h_meas.norm();
            if m == 0.0 || !m.is_finite() {
                return Err(Error::NonFinite(format!("measured gain of pair {}", o.pair)));
            }
            let k = -2.0 / o.distance_m * (m / g).ln();
            let clipped = k < 0.0;
            Ok(AbsorptionSample {
                pair: o.pair,
                frequency_hz: o.frequency_hz,
                distance_m: o.distance_m,
                k_hat: if clipped { 0.0 } else { k },
                clipped,
            })
        })
        .collect()
}

/// Writes `pair,f_hz,d_m,re,im` with lossless 17-digit values.
pub fn write_observations_csv<W: Write>(w: W, obs: &[SensingObservation]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let io = |e: csv::Error| Error::io("<observations>", e.into());
    wtr.write_record(["pair", "f_hz", "d_m", "re", "im"]).map_err(io)?;
    for o in obs {
        wtr.write_record([
            o.pair.to_string(),
            format!("{:.16e}", o.frequency_hz),
            format!("{:.16e}", o.distance_m),
            format!("{:.16e}", o.h_meas.re),
            format!("{:.16e}", o.h_meas.im),
        ])
        .map_err(io)?;
    }
    wtr.flush().map_err(|e| Error::io("<observations>", e))
}

pub fn read_observations_csv<R: Read>(r: R) -> Result<Vec<SensingObservation>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let names = ["pair", "f_hz", "d_m", "re", "im"];
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            field: "record".into(),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != names.len() {
            return Err(Error::Parse {
                line,
                field: "record".into(),
                message: format!("expected {} fields, got {}", names.len(), rec.len()),
            });
        }
        let num = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|e: std::num::ParseFloatError| Error::Parse {
                line,
                field: names[i].into(),
                message: e.to_string(),
            })
        };
        let pair = rec[0].parse().map_err(|e: std::num::ParseIntError| Error::Parse {
            line,
            field: "pair".into(),
            message: e.to_string(),
        })?;
        out.push(SensingObservation {
            pair,
            frequency_hz: num(1)?,
            distance_m: num(2)?,
            h_meas: Complex64::new(num(3)?, num(4)?),
        });
    }
    Ok(out)
}
