//! Mixing-ratio estimation from per-pair absorption samples.

use super::model::{AbsorptionSample, FrequencyPlan};
use super::nnls::nnls;
use crate::error::{Error, Result};
use crate::spectro::{absorption_coefficient_with, gas_basis, ExactOptions, LineDatabase, Medium};
use nalgebra::{DMatrix, DVector};

/// Condition number of the column-scaled basis above which estimation is
/// refused.
const MAX_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureOptions {
    /// Re-linearization passes that re-evaluate collision widths at the
    /// current estimate.
    pub refinement_passes: usize,
    pub exact: ExactOptions,
}

impl Default for MixtureOptions {
    fn default() -> Self {
        MixtureOptions {
            refinement_passes: 0,
            exact: ExactOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GasEstimate {
    pub gases: Vec<u16>,
    pub mixing_ratios: Vec<f64>,
    /// `||A q - b||` in 1/m.
    pub residual_norm: f64,
    /// Diagonal of `(A^T A)^-1`, a covariance proxy up to the noise level.
    pub covariance_diag: Vec<f64>,
}

struct System {
    a: DMatrix<f64>,
    b: DVector<f64>,
}

fn build_system(
    samples: &[AbsorptionSample],
    db: &LineDatabase,
    template: &Medium,
    unknown: &[u16],
    known_medium: &Medium,
    opts: &ExactOptions,
) -> Result<System> {
    let m = samples.len();
    let mut a = DMatrix::zeros(m, unknown.len());
    let mut b = DVector::zeros(m);
    for (r, s) in samples.iter().enumerate() {
        for (c, &g) in unknown.iter().enumerate() {
            a[(r, c)] = gas_basis(s.frequency_hz, g, template, db, opts)?;
        }
        b[r] = s.k_hat - absorption_coefficient_with(s.frequency_hz, known_medium, db, opts)?;
    }
    Ok(System { a, b })
}

fn solve_scaled(sys: &System) -> Result<(DVector<f64>, Vec<f64>)> {
    let n = sys.a.ncols();
    let norms: Vec<f64> = (0..n).map(|c| sys.a.column(c).norm()).collect();
    if let Some(c) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::IllConditioned {
            condition: f64::INFINITY,
            hint: format!("unknown gas #{c} has no absorption at any planned frequency; choose frequencies near its line centers"),
        });
    }
    let mut scaled = sys.a.clone();
    for (c, &v) in norms.iter().enumerate() {
        scaled.column_mut(c).unscale_mut(v);
    }
    let sv = scaled.singular_values();
    let cond = sv.max() / sv.min();
    if !(cond <= MAX_CONDITION) || sys.a.nrows() < n {
        return Err(Error::IllConditioned {
            condition: cond,
            hint: "choose frequencies nearer distinct line centers of the unknown gases".into(),
        });
    }
    let sol = nnls(&scaled, &sys.b)?;
    let q = DVector::from_iterator(n, (0..n).map(|c| sol.x[c] / norms[c]));
    Ok((q, norms))
}

/// Fits `K_hat(f) - K_known(f) = sum_g q_g B_g(f)` with `q >= 0`, where
/// `B_g` is the per-unit-ratio spectrum of unknown gas `g` with collision
/// widths taken from `template`, and `K_known` is the absorption of the
/// template's remaining gases.
pub fn estimate_mixture(
    samples: &[AbsorptionSample],
    db: &LineDatabase,
    template: &Medium,
    unknown_gases: &[u16],
    opts: &MixtureOptions,
) -> Result<GasEstimate> {
    if unknown_gases.is_empty() {
        return Err(Error::invalid("no unknown gases"));
    }
    let mut sorted = unknown_gases.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != unknown_gases.len() {
        return Err(Error::invalid("unknown gases listed twice"));
    }
    let present = db.gas_ids();
    if let Some(g) = unknown_gases.iter().find(|g| !present.contains(g)) {
        return Err(Error::invalid(format!("gas {g} has no lines in the database")));
    }
    if samples.len() < unknown_gases.len() {
        return Err(Error::invalid(format!(
            "{} samples cannot determine {} unknowns",
            samples.len(),
            unknown_gases.len()
        )));
    }

    let mut known = Medium::with_reference(
        template.temperature_k(),
        template.pressure_atm(),
        template.reference_temperature_k(),
        template.reference_pressure_atm(),
    )?;
    for s in template.species() {
        if !unknown_gases.contains(&s.gas_id) {
            known.add_species(*s)?;
        }
    }

    let mut lin = template.clone();
    let mut sys = build_system(samples, db, &lin, unknown_gases, &known, &opts.exact)?;
    let (mut q, _) = solve_scaled(&sys)?;
    for _ in 0..opts.refinement_passes {
        for (c, &g) in unknown_gases.iter().enumerate() {
            lin.set_gas_ratio(g, q[c].min(1.0))?;
        }
        sys = build_system(samples, db, &lin, unknown_gases, &known, &opts.exact)?;
        q = solve_scaled(&sys)?.0;
    }

    let total: f64 = q.iter().sum::<f64>()
        + known.species().iter().map(|s| s.mixing_ratio).sum::<f64>();
    if total > 1.0 + 1e-9 {
        return Err(Error::invalid(format!(
            "estimated mixing ratios sum to {total}, above 1"
        )));
    }
    let residual_norm = (&sys.a * &q - &sys.b).norm();
    let covariance_diag = match (sys.a.transpose() * &sys.a).try_inverse() {
        Some(inv) => inv.diagonal().iter().copied().collect(),
        None => vec![f64::INFINITY; unknown_gases.len()],
    };
    Ok(GasEstimate {
        gases: unknown_gases.to_vec(),
        mixing_ratios: q.iter().copied().collect(),
        residual_norm,
        covariance_diag,
    })
}

/// Greedy frequency plan: for each unknown gas, rank its line centers in
/// `band` by how much of the total template absorption that gas explains
/// there, then hand the best distinct frequencies to the SA pairs in
/// round-robin over the gases.
pub fn advise_frequency_plan(
    db: &LineDatabase,
    template: &Medium,
    unknown_gases: &[u16],
    band: (f64, f64),
    pairs: usize,
) -> Result<FrequencyPlan> {
    if pairs == 0 || unknown_gases.is_empty() {
        return Err(Error::invalid("need at least one pair and one gas"));
    }
    let opts = ExactOptions::default();
    let all_gases = {
        let mut g = template.gas_ids();
        g.extend_from_slice(unknown_gases);
        g.sort_unstable();
        g.dedup();
        g
    };
    let weight = |g: u16| {
        let q = template.mixing_ratio(g, 0);
        if q > 0.0 {
            q
        } else {
            1.0
        }
    };
    let p_rel = template.pressure_atm() / template.reference_pressure_atm();
    let mut ranked: Vec<Vec<f64>> = Vec::with_capacity(unknown_gases.len());
    for &g in unknown_gases {
        let mut scored = Vec::new();
        for l in db.window(band.0, band.1).iter().filter(|l| l.gas_id == g) {
            let f = l.fc0_hz + l.delta_hz * p_rel;
            let own = weight(g) * gas_basis(f, g, template, db, &opts)?;
            let mut total = 0.0;
            for &h in &all_gases {
                total += weight(h) * gas_basis(f, h, template, db, &opts)?;
            }
            if total > 0.0 {
                scored.push((own / total, own, f));
            }
        }
        if scored.is_empty() {
            return Err(Error::invalid(format!("gas {g} has no lines in the band")));
        }
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
        ranked.push(scored.into_iter().map(|s| s.2).collect());
    }
    let mut plan = Vec::with_capacity(pairs);
    let mut cursor = vec![0usize; ranked.len()];
    while plan.len() < pairs {
        for (gi, list) in ranked.iter().enumerate() {
            if plan.len() == pairs {
                break;
            }
            plan.push(list[cursor[gi] % list.len()]);
            cursor[gi] += 1;
        }
    }
    Ok(FrequencyPlan {
        frequencies_hz: plan,
    })
}
