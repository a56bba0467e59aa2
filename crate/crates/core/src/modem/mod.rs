//! Spatial and generalized index modulation, constellations, pulse shapes
//! and maximum-likelihood detection.

mod constellation;
mod detect;
mod index;
mod pulse;

pub use constellation::Constellation;
pub use detect::{ml_detect, CandidateSet, Detection, ML_CANDIDATE_LIMIT};
pub use index::{
    binomial, floor_log2_binomial, gim_bit_count, gim_demap, gim_map, rank_combination,
    sm_bit_count, sm_demap, sm_map, unrank_combination, BinomialReading, GimConfig, GimSymbol,
    SmConfig, SmSymbol,
};
pub use pulse::{pulse_sample, PulseSpec};

/// Reads `bits` as an unsigned integer, first bit least significant.
pub(crate) fn bits_to_u64(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

pub(crate) fn u64_to_bits(value: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (value >> i) & 1 == 1).collect()
}
