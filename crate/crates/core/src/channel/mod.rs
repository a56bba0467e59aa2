//! Channel synthesis: line-of-sight and Saleh-Valenzuela multipath between
//! arrays of subarrays, reconfigurable intelligent surfaces, misalignment and
//! hardware impairments.
//!
//! Channel matrices are `rx x tx` at SA granularity unless noted, with SAs in
//! the linear order of [`crate::geometry::ArrayConfig::sa_index`].

mod impair;
mod irs;
mod los;
mod matrix_io;
mod sv;

pub use impair::{
    apply_impairments, effective_channel, misalignment_factor, ImpairmentConfig,
    MisalignmentConfig, RadialOffset, Reception, StochasticGain,
};
pub use irs::{irs_cascade, IrsConfig, IrsElement};
pub use los::{
    ae_level_channel, los_channel, los_channel_with, los_path_gain, los_path_gain_from_k,
    LinkOptions,
};
pub use matrix_io::{read_matrix_csv, write_matrix_csv};
pub use sv::{draw_rays, sv_mean_power, sv_nlos_channel, AngularProfile, GaussianMixture, Ray, SvProfile};

pub(crate) use los::pair_link;

use crate::error::{Error, Result};
use crate::CMatrix;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Los,
    Nlos,
    Cascade,
}

/// Complex channel matrix with the frequency and reference distance it was
/// computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    pub entries: CMatrix,
    pub frequency_hz: f64,
    /// Distance between the array centers (sum of legs for a cascade).
    pub distance_m: f64,
    pub kind: ChannelKind,
}

/// Sidecar metadata written next to a matrix CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelMetadata {
    pub rows: usize,
    pub cols: usize,
    pub frequency_hz: f64,
    pub distance_m: f64,
    pub kind: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ChannelMatrix {
    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn metadata(&self, seed: Option<u64>) -> ChannelMetadata {
        ChannelMetadata {
            rows: self.rows(),
            cols: self.cols(),
            frequency_hz: self.frequency_hz,
            distance_m: self.distance_m,
            kind: self.kind,
            seed,
        }
    }

    /// Writes `row,col,re,im` CSV to `data` and TOML metadata to `meta`.
    pub fn export<W1: Write, W2: Write>(&self, data: W1, mut meta: W2, seed: Option<u64>) -> Result<()> {
        write_matrix_csv(data, &self.entries)?;
        let text = toml::to_string(&self.metadata(seed)).map_err(|e| Error::Config(e.to_string()))?;
        meta.write_all(text.as_bytes())
            .map_err(|e| Error::io("<metadata>", e))
    }

    pub fn import<R1: Read, R2: Read>(data: R1, mut meta: R2) -> Result<(Self, Option<u64>)> {
        let mut text = String::new();
        meta.read_to_string(&mut text)
            .map_err(|e| Error::io("<metadata>", e))?;
        let md: ChannelMetadata = toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
        let entries = read_matrix_csv(data)?;
        if entries.nrows() != md.rows || entries.ncols() != md.cols {
            return Err(Error::invalid(format!(
                "matrix is {}x{} but metadata says {}x{}",
                entries.nrows(),
                entries.ncols(),
                md.rows,
                md.cols
            )));
        }
        Ok((
            ChannelMatrix {
                entries,
                frequency_hz: md.frequency_hz,
                distance_m: md.distance_m,
                kind: md.kind,
            },
            md.seed,
        ))
    }
}
