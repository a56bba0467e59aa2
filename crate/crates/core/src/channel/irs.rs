//! Reconfigurable intelligent surface cascades.

use super::{los_channel_with, ChannelKind, ChannelMatrix, LinkOptions};
use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, GainModel, Orientation};
use crate::spectro::{absorption_coefficient, LineDatabase, Medium};
use crate::{CMatrix, Complex64};

/// Reflection state of one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsElement {
    pub amplitude: f64,
    pub phase: f64,
}

/// Planar surface of `rows x cols` single-antenna elements, row-major like
/// an array's SAs.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsConfig {
    pub rows: usize,
    pub cols: usize,
    pub spacing_m: f64,
    pub origin: [f64; 3],
    pub orientation: Orientation,
    pub elements: Vec<IrsElement>,
}

impl IrsConfig {
    /// Surface with every element fully reflecting and zero phase.
    pub fn uniform(rows: usize, cols: usize, spacing_m: f64, origin: [f64; 3], orientation: Orientation) -> Self {
        IrsConfig {
            rows,
            cols,
            spacing_m,
            origin,
            orientation,
            elements: vec![
                IrsElement {
                    amplitude: 1.0,
                    phase: 0.0
                };
                rows * cols
            ],
        }
    }

    /// On/off surface: amplitude 1 where `active`, 0 elsewhere.
    pub fn set_binary(&mut self, active: &[bool]) -> Result<()> {
        if active.len() != self.elements.len() {
            return Err(Error::invalid("binary mask length differs from element count"));
        }
        for (e, &a) in self.elements.iter_mut().zip(active) {
            e.amplitude = if a { 1.0 } else { 0.0 };
            e.phase = 0.0;
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 || self.elements.len() != self.rows * self.cols {
            return Err(Error::invalid("IRS needs rows*cols element states"));
        }
        if self
            .elements
            .iter()
            .any(|e| !(e.amplitude.is_finite() && (0.0..=1.0).contains(&e.amplitude)) || !e.phase.is_finite())
        {
            return Err(Error::invalid("IRS amplitudes must lie in [0, 1]"));
        }
        Ok(())
    }

    fn as_array(&self, f_hz: f64) -> ArrayConfig {
        ArrayConfig::new(self.rows, self.cols, 1, self.spacing_m, self.spacing_m, f_hz)
            .at(self.origin, self.orientation)
            .with_gain(GainModel::Fixed { gain: 1.0 })
    }
}

/// `H_IR diag(beta e^{j Omega}) H_TI` at the tx carrier. Each leg is an
/// SA-level LoS channel with the surface elements as single-element SAs;
/// the facing check is skipped because the surface sits off-axis.
pub fn irs_cascade(
    tx: &ArrayConfig,
    irs: &IrsConfig,
    rx: &ArrayConfig,
    medium: &Medium,
    db: &LineDatabase,
) -> Result<ChannelMatrix> {
    irs.validate()?;
    if tx.q != 1 || rx.q != 1 {
        return Err(Error::invalid("IRS cascades use single-element SAs (q = 1)"));
    }
    let f = tx.carrier_frequency_hz;
    let k = absorption_coefficient(f, medium, db)?;
    let surface = irs.as_array(f);
    let free = LinkOptions {
        require_facing: false,
    };
    let h_ti = los_channel_with(tx, &surface, k, free)?;
    let h_ir = los_channel_with(&surface, rx, k, free)?;
    let phi = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        irs.elements.len(),
        irs.elements
            .iter()
            .map(|e| Complex64::from_polar(e.amplitude, e.phase)),
    ));
    Ok(ChannelMatrix {
        entries: &h_ir.entries * phi * &h_ti.entries,
        frequency_hz: f,
        distance_m: h_ti.distance_m + h_ir.distance_m,
        kind: ChannelKind::Cascade,
    })
}
