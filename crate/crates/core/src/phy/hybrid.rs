//! Hybrid analog/digital precoding on a dynamic array of subarrays (DAoSA),
//! where switches decide which SAs feed which RF chains.
//!
//! The analog precoder `P_A` is `(SAs * q^2) x RF chains`; rows are
//! SA-major element indices. Entries outside the blocks enabled by the
//! connection mask are zero.

use super::linear::water_filling;
use crate::error::{finite, Error, Result};
use crate::{CMatrix, Complex64};
use std::f64::consts::PI;

/// Which SA feeds which RF chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionMask {
    n_sa: usize,
    n_rf: usize,
    links: Vec<bool>,
}

impl ConnectionMask {
    /// `links[sa * n_rf + rf]`.
    pub fn new(n_sa: usize, n_rf: usize, links: Vec<bool>) -> Result<Self> {
        if n_sa == 0 || n_rf == 0 || links.len() != n_sa * n_rf {
            return Err(Error::invalid(format!(
                "mask needs {n_sa}x{n_rf} entries, got {}",
                links.len()
            )));
        }
        Ok(ConnectionMask { n_sa, n_rf, links })
    }

    /// Every SA feeds every RF chain.
    pub fn fully_connected(n_sa: usize, n_rf: usize) -> Result<Self> {
        Self::new(n_sa, n_rf, vec![true; n_sa * n_rf])
    }

    /// Contiguous, disjoint SA groups, one per RF chain.
    pub fn fixed_aosa(n_sa: usize, n_rf: usize) -> Result<Self> {
        if n_rf > n_sa {
            return Err(Error::invalid("more RF chains than SAs"));
        }
        let links = (0..n_sa)
            .flat_map(|s| (0..n_rf).map(move |k| s * n_rf / n_sa == k))
            .collect();
        Self::new(n_sa, n_rf, links)
    }

    /// Each RF chain driven by the first SA of its fixed-AoSA group only.
    pub fn single_connection(n_sa: usize, n_rf: usize) -> Result<Self> {
        let aosa = Self::fixed_aosa(n_sa, n_rf)?;
        let mut links = vec![false; n_sa * n_rf];
        for k in 0..n_rf {
            if let Some(s) = (0..n_sa).find(|&s| aosa.is_connected(s, k)) {
                links[s * n_rf + k] = true;
            }
        }
        Self::new(n_sa, n_rf, links)
    }

    pub fn n_sa(&self) -> usize {
        self.n_sa
    }

    pub fn n_rf(&self) -> usize {
        self.n_rf
    }

    pub fn is_connected(&self, sa: usize, rf: usize) -> bool {
        self.links[sa * self.n_rf + rf]
    }

    pub fn links(&self) -> &[bool] {
        &self.links
    }

    /// SAs feeding RF chain `rf`.
    pub fn group(&self, rf: usize) -> Vec<usize> {
        (0..self.n_sa).filter(|&s| self.is_connected(s, rf)).collect()
    }
}

/// Analog phase-shifter resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseResolution {
    Continuous,
    /// `2^bits` uniformly spaced phases starting at 0.
    Quantized { bits: u32 },
}

impl PhaseResolution {
    fn apply(self, phase: f64) -> f64 {
        match self {
            PhaseResolution::Continuous => phase,
            PhaseResolution::Quantized { bits } => {
                let step = 2.0 * PI / (1u64 << bits) as f64;
                (phase / step).round() * step
            }
        }
    }
}

/// Checks the shape of `pa` and that it is zero outside the mask's blocks.
pub fn validate_analog(pa: &CMatrix, mask: &ConnectionMask, q: usize) -> Result<()> {
    let per_sa = q * q;
    if pa.nrows() != mask.n_sa * per_sa || pa.ncols() != mask.n_rf {
        return Err(Error::invalid(format!(
            "analog precoder is {}x{}, expected {}x{}",
            pa.nrows(),
            pa.ncols(),
            mask.n_sa * per_sa,
            mask.n_rf
        )));
    }
    for s in 0..mask.n_sa {
        for k in 0..mask.n_rf {
            if mask.is_connected(s, k) {
                continue;
            }
            for e in 0..per_sa {
                if pa[(s * per_sa + e, k)] != Complex64::new(0.0, 0.0) {
                    return Err(Error::invalid(format!(
                        "analog precoder drives SA {s} on RF chain {k}, which the mask disconnects"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Achievable rate in bit/s/Hz:
/// `log2 det(I + p / (Ns sigma2) (H F)^H (H F))` with `F = P_A P_D`,
/// evaluated at `Ns x Ns`.
pub fn daosa_rate(
    h: &CMatrix,
    pa: &CMatrix,
    pd: &CMatrix,
    power: f64,
    noise_var: f64,
    ns: usize,
) -> Result<f64> {
    if ns == 0 || pd.ncols() != ns {
        return Err(Error::invalid(format!(
            "digital precoder has {} columns, expected Ns = {ns}",
            pd.ncols()
        )));
    }
    if h.ncols() != pa.nrows() || pa.ncols() != pd.nrows() {
        return Err(Error::invalid(format!(
            "dimension mismatch: H {}x{}, P_A {}x{}, P_D {}x{}",
            h.nrows(),
            h.ncols(),
            pa.nrows(),
            pa.ncols(),
            pd.nrows(),
            pd.ncols()
        )));
    }
    if !(power >= 0.0 && noise_var > 0.0) {
        return Err(Error::invalid("power must be non-negative and noise positive"));
    }
    let hf = h * pa * pd;
    let snr = power / (ns as f64 * noise_var);
    let m = CMatrix::identity(ns, ns) + hf.adjoint() * &hf * Complex64::new(snr, 0.0);
    let logdet = match m.clone().cholesky() {
        Some(c) => {
            let l = c.l();
            (0..ns).map(|i| 2.0 * l[(i, i)].re.ln()).sum::<f64>()
        }
        None => m.determinant().re.ln(),
    };
    finite(logdet / std::f64::consts::LN_2, "rate")
}

/// Analog and digital precoders for one mask with the rate they achieve.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridPrecoder {
    pub analog: CMatrix,
    pub digital: CMatrix,
    pub rate: f64,
}

/// Thin SVD basis of the column space of `a` (relative tolerance 1e-10).
fn range_basis(a: &CMatrix) -> (CMatrix, usize) {
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let smax = svd.singular_values.max();
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let keep: Vec<usize> = idx
        .into_iter()
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > 1e-10 * smax)
        .collect();
    let basis = CMatrix::from_fn(a.nrows(), keep.len(), |r, c| u[(r, keep[c])]);
    (basis, keep.len())
}

/// Best digital precoder for a fixed analog stage under
/// `||P_A P_D||_F^2 = Ns`: water-filling over the eigenmodes of the channel
/// restricted to the analog column space.
pub fn optimal_digital_precoder(
    h: &CMatrix,
    pa: &CMatrix,
    ns: usize,
    power: f64,
    noise_var: f64,
) -> Result<HybridPrecoder> {
    if h.ncols() != pa.nrows() {
        return Err(Error::invalid("channel columns differ from analog precoder rows"));
    }
    if !(power >= 0.0 && noise_var > 0.0) || ns == 0 {
        return Err(Error::invalid("need Ns >= 1, power >= 0 and noise > 0"));
    }
    let (u, rank) = range_basis(pa);
    if rank < ns {
        return Err(Error::invalid(format!(
            "analog precoder has rank {rank}, below Ns = {ns}"
        )));
    }
    let b = h * &u;
    let svd = b.clone().svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let snr = power / (ns as f64 * noise_var);
    let mut gains = Vec::with_capacity(ns);
    let mut v = CMatrix::zeros(rank, ns);
    for (c, &i) in order.iter().take(ns).enumerate() {
        gains.push(snr * svd.singular_values[i].powi(2));
        for r in 0..rank {
            v[(r, c)] = v_t[(i, r)].conj();
        }
    }
    // Fewer channel modes than streams: remaining columns carry no power.
    for c in gains.len()..ns {
        gains.push(0.0);
        if c < rank {
            v[(c, c)] = Complex64::new(1.0, 0.0);
        }
    }
    let wf = water_filling(&gains, ns as f64)?;
    for (c, p) in wf.powers.iter().enumerate() {
        let s = Complex64::new(p.sqrt(), 0.0);
        for r in 0..rank {
            v[(r, c)] *= s;
        }
    }
    let f = &u * v;
    let pinv = pa
        .clone()
        .pseudo_inverse(1e-12 * pa.norm().max(f64::MIN_POSITIVE))
        .map_err(|e| Error::NonFinite(e.to_string()))?;
    let pd = pinv * f;
    let rate = daosa_rate(h, pa, &pd, power, noise_var, ns)?;
    Ok(HybridPrecoder {
        analog: pa.clone(),
        digital: pd,
        rate,
    })
}

/// Phase-only analog stage: RF chain `k` gets the phases of target vector
/// `targets[k]` on its connected elements, scaled to unit column norm.
fn analog_from_targets(
    targets: &[&[Complex64]],
    mask: &ConnectionMask,
    q: usize,
    phases: PhaseResolution,
) -> CMatrix {
    let per_sa = q * q;
    let mut pa = CMatrix::zeros(mask.n_sa * per_sa, mask.n_rf);
    for (k, target) in targets.iter().enumerate() {
        let group = mask.group(k);
        if group.is_empty() {
            continue;
        }
        let amp = 1.0 / ((group.len() * per_sa) as f64).sqrt();
        for &s in &group {
            for e in 0..per_sa {
                let i = s * per_sa + e;
                let phase = phases.apply(target[i].arg());
                pa[(i, k)] = Complex64::from_polar(amp, phase);
            }
        }
    }
    pa
}

/// Heuristic hybrid precoder for one mask. Each RF chain's analog weights
/// take the phases of one of the channel's dominant right singular vectors
/// (every assignment is tried when there are at most 256); the digital
/// stage is water-filling on the resulting effective channel. Fully
/// connected masks also try the Hadamard-mixed fixed-AoSA stage.
pub fn hybrid_precoder(
    h: &CMatrix,
    mask: &ConnectionMask,
    q: usize,
    ns: usize,
    power: f64,
    noise_var: f64,
    phases: PhaseResolution,
) -> Result<HybridPrecoder> {
    if h.ncols() != mask.n_sa * q * q {
        return Err(Error::invalid(format!(
            "channel has {} columns, mask and q imply {}",
            h.ncols(),
            mask.n_sa * q * q
        )));
    }
    if ns == 0 || ns > mask.n_rf {
        return Err(Error::invalid(format!(
            "need 1 <= Ns <= RF chains ({}), got {ns}",
            mask.n_rf
        )));
    }
    let svd = h.clone().svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let n_targets = mask.n_rf.min(order.len());
    let vectors: Vec<Vec<Complex64>> = order[..n_targets]
        .iter()
        .map(|&i| v_t.row(i).iter().map(|z| z.conj()).collect())
        .collect();

    let n_rf = mask.n_rf;
    let exhaustive = (n_targets as f64).powi(n_rf as i32) <= 256.0;
    let assignments: Vec<Vec<usize>> = if exhaustive {
        let total = n_targets.pow(n_rf as u32);
        (0..total)
            .map(|mut code| {
                (0..n_rf)
                    .map(|_| {
                        let d = code % n_targets;
                        code /= n_targets;
                        d
                    })
                    .collect()
            })
            .collect()
    } else {
        vec![(0..n_rf).map(|k| k % n_targets).collect()]
    };

    let mut best: Option<HybridPrecoder> = None;
    for a in assignments {
        let targets: Vec<&[Complex64]> = a.iter().map(|&i| vectors[i].as_slice()).collect();
        let pa = analog_from_targets(&targets, mask, q, phases);
        let Ok(cand) = optimal_digital_precoder(h, &pa, ns, power, noise_var) else {
            continue;
        };
        if best.as_ref().is_none_or(|b| cand.rate > b.rate + 1e-12) {
            best = Some(cand);
        }
    }
    if let Some(lifted) = lifted_aosa(h, mask, q, ns, power, noise_var, phases)? {
        if best.as_ref().is_none_or(|b| lifted.rate > b.rate + 1e-12) {
            best = Some(lifted);
        }
    }
    best.ok_or_else(|| {
        Error::invalid(format!(
            "mask cannot carry {ns} streams (too few connected RF chains)"
        ))
    })
}

/// For a fully-connected mask with a power-of-two number of RF chains, the
/// fixed-AoSA analog stage times a Hadamard matrix is a valid phase-only
/// stage with the same column space, hence the same optimal rate. Offering
/// it as a candidate keeps the fully-connected rate at or above the
/// fixed-AoSA rate.
fn lifted_aosa(
    h: &CMatrix,
    mask: &ConnectionMask,
    q: usize,
    ns: usize,
    power: f64,
    noise_var: f64,
    phases: PhaseResolution,
) -> Result<Option<HybridPrecoder>> {
    let n_rf = mask.n_rf;
    let full = mask.links.iter().all(|&l| l);
    let phase_pi_on_grid = !matches!(phases, PhaseResolution::Quantized { bits: 0 });
    if !full || n_rf < 2 || !n_rf.is_power_of_two() || n_rf > mask.n_sa || !phase_pi_on_grid {
        return Ok(None);
    }
    let aosa = ConnectionMask::fixed_aosa(mask.n_sa, n_rf)?;
    let Ok(sub) = hybrid_precoder(h, &aosa, q, ns, power, noise_var, phases) else {
        return Ok(None);
    };
    let scale = 1.0 / (n_rf as f64).sqrt();
    let hadamard = CMatrix::from_fn(n_rf, n_rf, |i, j| {
        let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign * scale, 0.0)
    });
    let pa = &sub.analog * hadamard;
    optimal_digital_precoder(h, &pa, ns, power, noise_var).map(Some)
}

/// Result of searching over candidate masks.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchSearch {
    pub best: usize,
    pub precoder: HybridPrecoder,
    /// Rate per candidate; `None` where the mask cannot carry `Ns` streams.
    pub rates: Vec<Option<f64>>,
}

/// Runs [`hybrid_precoder`] for every candidate mask and keeps the highest
/// rate. Rates within 1e-12 count as ties, resolved to the lowest index.
pub fn daosa_switch_search(
    h: &CMatrix,
    candidates: &[ConnectionMask],
    q: usize,
    ns: usize,
    power: f64,
    noise_var: f64,
    phases: PhaseResolution,
) -> Result<SwitchSearch> {
    if candidates.is_empty() {
        return Err(Error::invalid("no candidate masks"));
    }
    let mut rates = Vec::with_capacity(candidates.len());
    let mut best: Option<(usize, HybridPrecoder)> = None;
    for (i, mask) in candidates.iter().enumerate() {
        match hybrid_precoder(h, mask, q, ns, power, noise_var, phases) {
            Ok(p) => {
                rates.push(Some(p.rate));
                if best.as_ref().is_none_or(|(_, b)| p.rate > b.rate + 1e-12) {
                    best = Some((i, p));
                }
            }
            Err(Error::InvalidInput(_)) => rates.push(None),
            Err(e) => return Err(e),
        }
    }
    let (best, precoder) = best.ok_or_else(|| Error::invalid("no candidate mask can carry Ns streams"))?;
    Ok(SwitchSearch {
        best,
        precoder,
        rates,
    })
}
