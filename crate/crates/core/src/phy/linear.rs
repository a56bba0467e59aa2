//! Zero-forcing, water-filling and scalar quantization.

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, Complex64};

/// Zero-forcing precoder scaled to a Frobenius-norm power budget.
#[derive(Debug, Clone, PartialEq)]
pub struct ZfPrecoder {
    pub w: CMatrix,
    /// `H W = scale * I`.
    pub scale: f64,
}

/// Relative singular-value threshold below which a channel counts as rank
/// deficient.
const RANK_TOL: f64 = 1e-10;

/// `W = c H^H (H H^H)^-1` with `||W||_F^2 = power`; `H` is streams x antennas.
pub fn zf_precoder(h: &CMatrix, power: f64) -> Result<ZfPrecoder> {
    if h.nrows() == 0 || h.nrows() > h.ncols() {
        return Err(Error::invalid(format!(
            "zero forcing needs 1 <= streams <= antennas, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    if !(power.is_finite() && power > 0.0) {
        return Err(Error::invalid("power must be positive"));
    }
    let sv = h.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if !(min > RANK_TOL * max) {
        return Err(Error::RankDeficient {
            smallest_singular_value: min,
        });
    }
    let hh = h.adjoint();
    let gram = h * &hh;
    let inv = gram
        .try_inverse()
        .ok_or(Error::RankDeficient {
            smallest_singular_value: min,
        })?;
    let w0 = hh * inv;
    let scale = (power / w0.norm_squared()).sqrt();
    Ok(ZfPrecoder {
        w: w0 * Complex64::new(scale, 0.0),
        scale,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaterFilling {
    pub powers: Vec<f64>,
    /// Water level `mu`; active modes satisfy `p_i + 1/g_i = mu`.
    pub level: f64,
}

/// Allocates `total` power over modes with gains `g_i` (SNR per unit
/// power): `p_i = max(0, mu - 1/g_i)`. The level is found by bisection to
/// 1e-10 relative, and the powers are renormalized to sum to `total`.
pub fn water_filling(gains: &[f64], total: f64) -> Result<WaterFilling> {
    if gains.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
        return Err(Error::invalid("gains must be finite and non-negative"));
    }
    if !(total.is_finite() && total >= 0.0) {
        return Err(Error::invalid("total power must be non-negative"));
    }
    let floors: Vec<f64> = gains
        .iter()
        .map(|&g| if g > 0.0 { 1.0 / g } else { f64::INFINITY })
        .collect();
    let finite_max = floors.iter().cloned().filter(|f| f.is_finite()).fold(0.0, f64::max);
    if total == 0.0 || gains.iter().all(|&g| g == 0.0) {
        return Ok(WaterFilling {
            powers: vec![0.0; gains.len()],
            level: 0.0,
        });
    }
    let alloc = |mu: f64| -> f64 { floors.iter().map(|f| (mu - f).max(0.0)).sum() };
    let (mut lo, mut hi) = (0.0, total + finite_max);
    let tol = 1e-10 * hi;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if alloc(mid) > total {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    let mut powers: Vec<f64> = floors.iter().map(|f| (mu - f).max(0.0)).collect();
    let sum: f64 = powers.iter().sum();
    if sum > 0.0 {
        powers.iter_mut().for_each(|p| *p *= total / sum);
    }
    Ok(WaterFilling { powers, level: mu })
}

/// Sorted, distinct real quantizer labels applied separately to the real
/// and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizerSpec {
    labels: Vec<f64>,
}

impl QuantizerSpec {
    pub fn new(mut labels: Vec<f64>) -> Result<Self> {
        if labels.is_empty() || labels.iter().any(|l| !l.is_finite()) {
            return Err(Error::invalid("quantizer needs finite labels"));
        }
        labels.sort_by(f64::total_cmp);
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("quantizer labels must be distinct"));
        }
        Ok(QuantizerSpec { labels })
    }

    /// Labels {-1, +1}.
    pub fn one_bit() -> Self {
        QuantizerSpec {
            labels: vec![-1.0, 1.0],
        }
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    /// Nearest label; a value exactly midway goes to the lower label.
    pub fn quantize(&self, v: f64) -> f64 {
        let i = self.labels.partition_point(|&l| l < v);
        if i == 0 {
            return self.labels[0];
        }
        if i == self.labels.len() {
            return self.labels[i - 1];
        }
        let (a, b) = (self.labels[i - 1], self.labels[i]);
        if v - a <= b - v {
            a
        } else {
            b
        }
    }
}

/// Quantizes real and imaginary parts of each entry.
pub fn quantize_precoder_output(x: &CVector, spec: &QuantizerSpec) -> CVector {
    x.map(|z| Complex64::new(spec.quantize(z.re), spec.quantize(z.im)))
}
