//! Hybrid precoding for dynamic arrays of subarrays, zero-forcing and
//! water-filling, low-resolution quantization, and NOMA superposition.

mod hybrid;
mod linear;
mod noma;

pub use hybrid::{
    daosa_rate, daosa_switch_search, hybrid_precoder, optimal_digital_precoder,
    validate_analog, ConnectionMask, HybridPrecoder, PhaseResolution, SwitchSearch,
};
pub use linear::{
    quantize_precoder_output, water_filling, zf_precoder, QuantizerSpec, WaterFilling,
    ZfPrecoder,
};
pub use noma::{noma_superpose, two_user_noma_model, NomaSignal, NomaStream};
