//! Absorption-based gas sensing: each tx/rx SA pair is tuned to its own
//! frequency, the measured attenuation beyond free-space spreading gives an
//! absorption coefficient per pair, and a non-negative least-squares fit of
//! per-gas basis spectra recovers the mixing ratios.

mod estimate;
mod model;
mod nnls;

pub use estimate::{advise_frequency_plan, estimate_mixture, GasEstimate, MixtureOptions};
pub use model::{
    build_sensing_model, extract_absorption, read_observations_csv, synthesize_observations,
    write_observations_csv, AbsorptionSample, FrequencyPlan, SensingModel, SensingObservation,
};
pub use nnls::{nnls, NnlsSolution, NNLS_TOLERANCE};
