//! Power-domain NOMA superposition.

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, Complex64};

/// One stream: unit-energy symbols scaled by `sqrt(power)` on transmission.
#[derive(Debug, Clone, PartialEq)]
pub struct NomaStream {
    pub symbols: CVector,
    /// Power per symbol.
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NomaSignal {
    /// Noiseless received signal `sum_i H_i sqrt(p_i) x_i`.
    pub y: CVector,
    /// `H_i`: the last `S_i` columns of `H`.
    pub channels: Vec<CMatrix>,
}

/// Superposes streams of nonincreasing sizes `S_1 >= S_2 >= ...`, with
/// `S_1` equal to the number of transmit antennas. Stream `i` uses the last
/// `S_i` antennas. `power_budget`, when given, bounds `sum_i p_i S_i`.
pub fn noma_superpose(h: &CMatrix, streams: &[NomaStream], power_budget: Option<f64>) -> Result<NomaSignal> {
    let first = streams
        .first()
        .ok_or_else(|| Error::invalid("at least one stream required"))?;
    if first.symbols.len() != h.ncols() {
        return Err(Error::invalid(format!(
            "first stream has {} symbols but H has {} columns",
            first.symbols.len(),
            h.ncols()
        )));
    }
    let mut prev = usize::MAX;
    let mut used = 0.0;
    for (i, s) in streams.iter().enumerate() {
        let n = s.symbols.len();
        if n == 0 || n > prev {
            return Err(Error::invalid(format!(
                "stream sizes must be positive and nonincreasing (stream {i} has {n})"
            )));
        }
        if !(s.power.is_finite() && s.power >= 0.0) {
            return Err(Error::invalid(format!("stream {i} power must be non-negative")));
        }
        prev = n;
        used += s.power * n as f64;
    }
    if let Some(b) = power_budget {
        if used > b * (1.0 + 1e-12) {
            return Err(Error::invalid(format!("streams use {used}, budget is {b}")));
        }
    }
    let mut y = CVector::zeros(h.nrows());
    let mut channels = Vec::with_capacity(streams.len());
    for s in streams {
        let n = s.symbols.len();
        let hi = h.columns(h.ncols() - n, n).into_owned();
        y += &hi * &s.symbols * Complex64::new(s.power.sqrt(), 0.0);
        channels.push(hi);
    }
    Ok(NomaSignal { y, channels })
}

/// Two-user downlink: `y_k = H_k x_1 + H_k x_2 + n_k`, where `x_1` and
/// `x_2` are already power-scaled.
pub fn two_user_noma_model(
    h1: &CMatrix,
    h2: &CMatrix,
    x1: &CVector,
    x2: &CVector,
    n1: &CVector,
    n2: &CVector,
) -> Result<(CVector, CVector)> {
    let ok = |h: &CMatrix, n: &CVector| {
        h.ncols() == x1.len() && h.ncols() == x2.len() && h.nrows() == n.len()
    };
    if !ok(h1, n1) || !ok(h2, n2) {
        return Err(Error::invalid("dimension mismatch in two-user model"));
    }
    Ok((h1 * (x1 + x2) + n1, h2 * (x1 + x2) + n2))
}
