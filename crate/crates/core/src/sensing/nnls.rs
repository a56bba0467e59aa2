//! Lawson-Hanson active-set non-negative least squares.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Dual-feasibility tolerance, relative to `max |A^T b|`.
pub const NNLS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution {
    pub x: DVector<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[usize]) -> Result<DVector<f64>> {
    let sub = a.select_columns(passive);
    let svd = sub.svd(true, true);
    let eps = 1e-14 * svd.singular_values.max();
    svd.solve(b, eps)
        .map_err(|e| Error::NonFinite(format!("least-squares subproblem: {e}")))
}

/// `min ||A x - b||` subject to `x >= 0`. At most `10 * n` outer iterations.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<NnlsSolution> {
    let (m, n) = a.shape();
    if b.len() != m || n == 0 {
        return Err(Error::invalid(format!("NNLS dimensions: A {m}x{n}, b {}", b.len())));
    }
    if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
        return Err(Error::invalid("NNLS inputs must be finite"));
    }
    let atb = a.transpose() * b;
    let tol = NNLS_TOLERANCE * atb.amax().max(f64::MIN_POSITIVE);
    let max_iter = 10 * n;

    let mut x = DVector::<f64>::zeros(n);
    let mut passive = vec![false; n];
    let mut iterations = 0;
    loop {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        if iterations == max_iter {
            return Err(Error::NoConvergence(format!("NNLS after {max_iter} iterations")));
        }
        iterations += 1;
        passive[j] = true;
        loop {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let s_p = solve_passive(a, b, &idx)?;
            if s_p.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (k, &i) in idx.iter().enumerate() {
                    x[i] = s_p[k];
                }
                break;
            }
            // step back toward the feasible region; the blocking variable
            // leaves the passive set exactly at zero
            let mut alpha = f64::INFINITY;
            let mut blocking = idx[0];
            for (k, &i) in idx.iter().enumerate() {
                if s_p[k] <= 0.0 {
                    let t = x[i] / (x[i] - s_p[k]);
                    if t < alpha {
                        alpha = t;
                        blocking = i;
                    }
                }
            }
            for (k, &i) in idx.iter().enumerate() {
                x[i] += alpha * (s_p[k] - x[i]);
            }
            x[blocking] = 0.0;
            for &i in &idx {
                if x[i] <= 0.0 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let residual_norm = (a * &x - b).norm();
    Ok(NnlsSolution {
        x,
        residual_norm,
        iterations,
    })
}
