//! C ABI over the terasim library.
//!
//! Every fallible function returns a [`TsStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`ts_last_error_message`] on the same thread. Handles are opaque and must
//! be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use terasim::geometry::{optimal_sa_spacing, rayleigh_distance};
use terasim::modem::{gim_bit_count, sm_bit_count, BinomialReading, GimConfig, SmConfig};
use terasim::spectro::{
    absorption_coefficient, approx_absorption, ApproxModel, LineDatabase, Medium, Species,
};
use terasim::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    Io = 4,
    OutOfBand = 5,
    Numerical = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsApproxModel {
    /// 275 to 400 GHz.
    Band275To400 = 0,
    /// 100 to 450 GHz.
    Band100To450 = 1,
}

/// Opaque line database.
pub struct TsLineDatabase(LineDatabase);

/// Opaque propagation medium.
pub struct TsMedium(Medium);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::InvalidInput(_) | Error::Config(_) | Error::TooManyCandidates { .. } => {
            TsStatus::InvalidInput
        }
        Error::Parse { .. } => TsStatus::Parse,
        Error::Io { .. } => TsStatus::Io,
        Error::OutOfBand { .. } => TsStatus::OutOfBand,
        _ => TsStatus::Numerical,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside terasim".into());
            TsStatus::Panic
        }
    }
}

fn lib<T>(r: terasim::Result<T>) -> Result<T, (TsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (TsStatus, String) {
    (TsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (TsStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: caller passes a valid, aligned, writable pointer.
    unsafe { out.write(v) };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Bundled line list. Never fails.
#[no_mangle]
pub extern "C" fn ts_linedb_bundled() -> *mut TsLineDatabase {
    Box::into_raw(Box::new(TsLineDatabase(LineDatabase::bundled())))
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_linedb_load(path: *const c_char, out: *mut *mut TsLineDatabase) -> TsStatus {
    guard(|| {
        if path.is_null() {
            return Err(null());
        }
        // SAFETY: checked non-null; caller guarantees NUL termination.
        let p = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|e| (TsStatus::InvalidInput, format!("path is not UTF-8: {e}")))?;
        let db = lib(LineDatabase::from_path(Path::new(p)))?;
        unsafe { write(out, Box::into_raw(Box::new(TsLineDatabase(db)))) }
    })
}

/// # Safety
/// `db` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_linedb_len(db: *const TsLineDatabase) -> usize {
    // SAFETY: caller contract.
    unsafe { db.as_ref() }.map_or(0, |d| d.0.len())
}

/// # Safety
/// `db` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_linedb_free(db: *mut TsLineDatabase) {
    if !db.is_null() {
        // SAFETY: handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(db) });
    }
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_medium_new(temperature_k: f64, pressure_atm: f64, out: *mut *mut TsMedium) -> TsStatus {
    guard(|| {
        let m = lib(Medium::new(temperature_k, pressure_atm))?;
        unsafe { write(out, Box::into_raw(Box::new(TsMedium(m)))) }
    })
}

/// Adds a species; isotope 0 matches every isotope of the gas.
///
/// # Safety
/// `medium` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_medium_add_species(
    medium: *mut TsMedium,
    gas_id: u16,
    isotope_id: u16,
    mixing_ratio: f64,
) -> TsStatus {
    guard(|| {
        // SAFETY: caller contract.
        let m = unsafe { medium.as_mut() }.ok_or_else(null)?;
        lib(m.0.add_species(Species {
            gas_id,
            isotope_id,
            mixing_ratio,
        }))
    })
}

/// # Safety
/// `medium` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_medium_free(medium: *mut TsMedium) {
    if !medium.is_null() {
        // SAFETY: handle came from Box::into_raw.
        drop(unsafe { Box::from_raw(medium) });
    }
}

/// Line-by-line absorption coefficient in 1/m.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_absorption_exact(
    medium: *const TsMedium,
    db: *const TsLineDatabase,
    frequency_hz: f64,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        // SAFETY: caller contract.
        let (m, d) = unsafe { (medium.as_ref(), db.as_ref()) };
        let (m, d) = (m.ok_or_else(null)?, d.ok_or_else(null)?);
        let k = lib(absorption_coefficient(frequency_hz, &m.0, &d.0))?;
        unsafe { write(out, k) }
    })
}

/// Closed-form absorption coefficient in 1/m for water-vapour ratio `mu`.
/// Outside the model band this fails with `OUT_OF_BAND` unless `force`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_absorption_approx(
    frequency_hz: f64,
    mu: f64,
    model: TsApproxModel,
    force: bool,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let model = match model {
            TsApproxModel::Band275To400 => ApproxModel::Band275To400,
            TsApproxModel::Band100To450 => ApproxModel::Band100To450,
        };
        let k = lib(approx_absorption(frequency_hz, mu, model, force))?;
        unsafe { write(out, k) }
    })
}

/// Complex LoS path gain for absorption `k_per_m`.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_los_path_gain(
    frequency_hz: f64,
    distance_m: f64,
    k_per_m: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> TsStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null());
        }
        let g = lib(terasim::channel::los_path_gain_from_k(frequency_hz, distance_m, k_per_m))?;
        unsafe {
            write(out_re, g.re)?;
            write(out_im, g.im)
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_rayleigh_distance(
    m: usize,
    n: usize,
    delta_r_m: f64,
    delta_t_m: f64,
    wavelength_m: f64,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let d = lib(rayleigh_distance(m, n, delta_r_m, delta_t_m, wavelength_m))?;
        unsafe { write(out, d) }
    })
}

/// SA spacing that makes the LoS channel orthogonal; `z` must be odd.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_optimal_sa_spacing(
    z: u32,
    distance_m: f64,
    wavelength_m: f64,
    m: usize,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let d = lib(optimal_sa_spacing(z, distance_m, wavelength_m, m))?;
        unsafe { write(out, d) }
    })
}

/// Bits per spatial-modulation symbol.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_sm_bit_count(
    num_sas: usize,
    q: usize,
    constellation_order: usize,
    out: *mut u32,
) -> TsStatus {
    guard(|| {
        let b = lib(sm_bit_count(&SmConfig {
            num_sas,
            q,
            constellation_order,
        }))?;
        unsafe { write(out, b) }
    })
}

/// Bits per generalized index-modulation symbol with the standard antenna
/// binomial.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_gim_bit_count(
    total_bands: u64,
    active_bands: u64,
    total_antennas: u64,
    active_antennas: u64,
    constellation_order: usize,
    out: *mut u32,
) -> TsStatus {
    guard(|| {
        let b = lib(gim_bit_count(&GimConfig {
            total_bands,
            active_bands,
            total_antennas,
            active_antennas,
            constellation_order,
            antenna_reading: BinomialReading::Standard,
        }))?;
        unsafe { write(out, b) }
    })
}
