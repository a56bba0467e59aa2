//! Unit-energy Gray-labelled constellations.

use crate::error::{Error, Result};
use crate::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    points: Vec<Complex64>,
}

fn gray_inverse(mut g: usize) -> usize {
    let mut i = g;
    while g > 0 {
        g >>= 1;
        i ^= g;
    }
    i
}

impl Constellation {
    /// BPSK for `order == 2`, otherwise square QAM with `order` a power of 4.
    /// Point `label` carries the bits of `label`; for QAM the low half of the
    /// bits selects the in-phase level and the high half the quadrature level,
    /// each Gray coded.
    pub fn qam(order: usize) -> Result<Self> {
        if order == 2 {
            return Ok(Constellation {
                points: vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)],
            });
        }
        if order < 4 || !order.is_power_of_two() || order.trailing_zeros() % 2 != 0 {
            return Err(Error::invalid(format!(
                "square QAM order must be a power of 4 (or 2 for BPSK), got {order}"
            )));
        }
        let half = order.trailing_zeros() / 2;
        let m = 1usize << half;
        let norm = (2.0 * ((m * m) as f64 - 1.0) / 3.0).sqrt();
        let level = |g: usize| (2.0 * gray_inverse(g) as f64 - (m as f64 - 1.0)) / norm;
        let points = (0..order)
            .map(|label| Complex64::new(level(label & (m - 1)), level(label >> half)))
            .collect();
        Ok(Constellation { points })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.points.len().trailing_zeros()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, label: usize) -> Option<Complex64> {
        self.points.get(label).copied()
    }

    /// Label of the nearest point (lowest label on ties).
    pub fn nearest(&self, z: Complex64) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, p) in self.points.iter().enumerate() {
            let d = (z - p).norm_sqr();
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }
}
