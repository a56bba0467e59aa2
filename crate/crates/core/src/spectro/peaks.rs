//! Peak picking on sampled loss curves.

/// A local maximum of a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossPeak {
    pub index: usize,
    pub frequency_hz: f64,
    pub loss_db: f64,
    /// Height above the higher of the two bounding minima.
    pub prominence_db: f64,
}

/// Interior local maxima whose topographic prominence is at least
/// `min_prominence_db`. Flat tops report their first sample.
pub fn loss_peaks(freqs_hz: &[f64], loss_db: &[f64], min_prominence_db: f64) -> Vec<LossPeak> {
    assert_eq!(freqs_hz.len(), loss_db.len(), "grid and curve lengths differ");
    let n = loss_db.len();
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if loss_db[i] > loss_db[i - 1] {
            let mut j = i;
            while j + 1 < n && loss_db[j + 1] == loss_db[i] {
                j += 1;
            }
            if j + 1 < n && loss_db[j + 1] < loss_db[i] {
                let top = loss_db[i];
                let mut left_min = top;
                let mut k = i;
                while k > 0 {
                    k -= 1;
                    if loss_db[k] > top {
                        break;
                    }
                    left_min = left_min.min(loss_db[k]);
                }
                let mut right_min = top;
                let mut k = j;
                while k + 1 < n {
                    k += 1;
                    if loss_db[k] > top {
                        break;
                    }
                    right_min = right_min.min(loss_db[k]);
                }
                let prominence = top - left_min.max(right_min);
                if prominence >= min_prominence_db {
                    out.push(LossPeak {
                        index: i,
                        frequency_hz: freqs_hz[i],
                        loss_db: top,
                        prominence_db: prominence,
                    });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}
