//! Terahertz link modelling: molecular absorption, array geometry, channel
//! synthesis, hybrid precoding, index modulation and absorption-based gas
//! sensing.
//!
//! All quantities are SI unless a name says otherwise (`_atm`, `_db`, `_dbi`).
//! Complex matrices use [`nalgebra::DMatrix`] over [`Complex64`].

pub mod channel;
pub mod cli;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod modem;
pub mod phy;
mod random;
pub mod sensing;
pub mod spectro;

pub use error::{Error, Result};

/// Double-precision complex number used throughout the crate.
pub type Complex64 = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<Complex64>;

/// Crate version string embedded in CLI provenance headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
