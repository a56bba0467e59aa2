//! Seeded random streams. Every stochastic routine takes an explicit seed;
//! Monte-Carlo trials use `stream(seed, trial)` so results do not depend on
//! scheduling.

use crate::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub(crate) type SimRng = ChaCha8Rng;

pub(crate) fn rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn stream(seed: u64, index: u64) -> SimRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Circularly symmetric complex Gaussian with variance `var`.
pub(crate) fn complex_normal<R: Rng + ?Sized>(rng: &mut R, var: f64) -> Complex64 {
    let s = (var / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}
