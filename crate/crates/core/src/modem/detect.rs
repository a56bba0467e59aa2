//! Exhaustive maximum-likelihood detection.

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, Complex64};
use rayon::prelude::*;

/// Largest candidate set searched exhaustively.
pub const ML_CANDIDATE_LIMIT: u128 = 1 << 20;

/// Transmit vectors to search.
#[derive(Debug, Clone, PartialEq)]
pub enum CandidateSet {
    /// All vectors of length `dim` over `alphabet`; candidate `i` has
    /// coordinate `j` equal to digit `j` of `i` in base `|alphabet|`
    /// (coordinate 0 least significant).
    Product { alphabet: Vec<Complex64>, dim: usize },
    Explicit(Vec<CVector>),
}

impl CandidateSet {
    pub fn len(&self) -> u128 {
        match self {
            CandidateSet::Product { alphabet, dim } => {
                let mut n: u128 = 1;
                for _ in 0..*dim {
                    n = n.saturating_mul(alphabet.len() as u128);
                }
                n
            }
            CandidateSet::Explicit(v) => v.len() as u128,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn candidate(&self, index: usize) -> CVector {
        match self {
            CandidateSet::Product { alphabet, dim } => {
                let m = alphabet.len();
                let mut code = index;
                CVector::from_fn(*dim, |_, _| {
                    let z = alphabet[code % m];
                    code /= m;
                    z
                })
            }
            CandidateSet::Explicit(v) => v[index].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub index: usize,
    pub x: CVector,
    /// `||y - H x||^2` of the decision.
    pub metric: f64,
}

/// `argmin_x ||y - H x||^2` over the candidate set; ties go to the lowest
/// index. The search runs in parallel with a deterministic reduction.
pub fn ml_detect(y: &CVector, h: &CMatrix, candidates: &CandidateSet) -> Result<Detection> {
    let count = candidates.len();
    if count == 0 {
        return Err(Error::invalid("empty candidate set"));
    }
    if count > ML_CANDIDATE_LIMIT {
        return Err(Error::TooManyCandidates {
            count,
            limit: ML_CANDIDATE_LIMIT,
        });
    }
    if h.nrows() != y.len() {
        return Err(Error::invalid("H rows differ from y length"));
    }
    let dim = match candidates {
        CandidateSet::Product { dim, .. } => *dim,
        CandidateSet::Explicit(v) => v[0].len(),
    };
    if h.ncols() != dim {
        return Err(Error::invalid("H columns differ from candidate length"));
    }
    if let CandidateSet::Explicit(v) = candidates {
        if v.iter().any(|c| c.len() != dim) {
            return Err(Error::invalid("candidates have different lengths"));
        }
    }
    let (metric, index) = (0..count as usize)
        .into_par_iter()
        .map(|i| {
            let x = candidates.candidate(i);
            ((y - h * x).norm_squared(), i)
        })
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    if !metric.is_finite() {
        return Err(Error::NonFinite("ML metric".into()));
    }
    Ok(Detection {
        index,
        x: candidates.candidate(index),
        metric,
    })
}
