//! C ABI for the cavity-response library.
//!
//! Models are opaque handles created by `cr_*_new` and released by the
//! matching `cr_*_free`. Every fallible call returns a [`CrStatus`]; the
//! message of the last failure on the calling thread is available from
//! [`cr_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cavity_response::meanfield::{ModelKind, ModelSpec};
use cavity_response::models::{conductivity, landau_polaritons, QheModel, QheSpec, SpinModel};
use cavity_response::response::{ComplexFrequency, InteractionChannel, Operator};
use cavity_response::{Error, C64};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The frequency hit an exact pole; retry with a broadening.
    Singular = 3,
    SolverFailure = 4,
    /// The output buffer was too short; the required length was reported.
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrModelKind {
    Dicke = 0,
    LmgLongitudinal = 1,
    LmgTransverse = 2,
    Heisenberg = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrOperator {
    X = 0,
    Y = 1,
    Z = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrComplex {
    pub re: f64,
    pub im: f64,
}

/// Parameters of a spin model. Fields a model does not use must be zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrSpinParams {
    pub kind: CrModelKind,
    pub omega_x: f64,
    pub omega_z: f64,
    pub j: f64,
    pub coordination: u32,
    pub lambda: f64,
    pub cavity_freq: f64,
    pub zeta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrMeanField {
    pub m_x: f64,
    pub m_z: f64,
    pub gap: f64,
    pub energy_per_site: f64,
    pub coexistence: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrQheParams {
    pub cavity_freq: f64,
    pub plasma_freq: f64,
    pub cyclotron_freq: f64,
    pub filling: f64,
}

/// Conductivity tensor; longitudinal entries relative to the Drude value,
/// Hall entries relative to `e^2 nu / h`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrConductivity {
    pub xx: CrComplex,
    pub xy: CrComplex,
    pub yx: CrComplex,
    pub yy: CrComplex,
}

/// A spin model at its mean-field ground state.
pub struct CrSpinModel(SpinModel);

/// The two-dimensional electron gas in a magnetic field and a cavity.
pub struct CrQheModel(QheModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CrStatus, msg: impl Into<String>) -> CrStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> CrStatus {
    let status = match e {
        Error::InvalidParameter(_) | Error::Config(_) | Error::DegenerateSpin => CrStatus::InvalidArgument,
        Error::Singular(_) => CrStatus::Singular,
        _ => CrStatus::SolverFailure,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> CrStatus) -> CrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CrStatus::Panic, "internal panic"),
    }
}

fn frequency(omega: f64, delta: f64) -> Result<ComplexFrequency, CrStatus> {
    ComplexFrequency::new(omega, delta).map_err(from_error)
}

fn complex(z: C64) -> CrComplex {
    CrComplex { re: z.re, im: z.im }
}

fn operator(op: CrOperator) -> Operator {
    match op {
        CrOperator::X => Operator::X,
        CrOperator::Y => Operator::Y,
        CrOperator::Z => Operator::Z,
    }
}

fn copy_list(values: &[f64], buf: *mut f64, cap: usize, count: *mut usize) -> CrStatus {
    // SAFETY: callers checked `count`; `buf` is valid for `cap` writes by contract.
    unsafe {
        *count = values.len();
        if values.len() > cap {
            return fail(CrStatus::BufferTooSmall, format!("need room for {} values", values.len()));
        }
        if !values.is_empty() {
            if buf.is_null() {
                return fail(CrStatus::NullPointer, "null output buffer");
            }
            ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        }
    }
    CrStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cr_status_string(status: CrStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CrStatus::Ok => c"ok",
        CrStatus::NullPointer => c"null pointer",
        CrStatus::InvalidArgument => c"invalid argument",
        CrStatus::Singular => c"singular frequency",
        CrStatus::SolverFailure => c"solver failure",
        CrStatus::BufferTooSmall => c"buffer too small",
        CrStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Solve the mean field of a spin model and return a handle to it.
///
/// # Safety
/// `params` must point to a valid `CrSpinParams` whose `kind` is one of
/// the declared values, and `out` to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_new(params: *const CrSpinParams, out: *mut *mut CrSpinModel) -> CrStatus {
    guarded(|| {
        if params.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument");
        }
        let p = unsafe { *params };
        let kind = match p.kind {
            CrModelKind::Dicke => ModelKind::Dicke,
            CrModelKind::LmgLongitudinal => ModelKind::LmgLongitudinal,
            CrModelKind::LmgTransverse => ModelKind::LmgTransverse,
            CrModelKind::Heisenberg => ModelKind::Heisenberg,
        };
        let spec = ModelSpec {
            kind,
            omega_x: p.omega_x,
            omega_z: p.omega_z,
            j: p.j,
            coordination: p.coordination,
            channel: InteractionChannel {
                lambda: p.lambda,
                cavity_freq: p.cavity_freq,
                zeta: p.zeta,
                static_shift: 0.0,
            },
        };
        match SpinModel::new(&spec) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(CrSpinModel(m))) };
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle from [`cr_spin_model_new`]. NULL is ignored.
///
/// # Safety
/// `model` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_free(model: *mut CrSpinModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Mean-field ground state of the model.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_mean_field(model: *const CrSpinModel, out: *mut CrMeanField) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, out.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        let s = m.0.state;
        unsafe {
            *out = CrMeanField {
                m_x: s.m_x,
                m_z: s.m_z,
                gap: s.gap,
                energy_per_site: s.energy_per_site,
                coexistence: s.coexistence,
            }
        };
        CrStatus::Ok
    })
}

/// Normal photon propagator at `omega + i delta`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_photon(
    model: *const CrSpinModel,
    omega: f64,
    delta: f64,
    out: *mut CrComplex,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, out.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        let w = match frequency(omega, delta) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match m.0.response(w) {
            Ok(r) => {
                unsafe { *out = complex(r.photon.unwrap_or_default()) };
                CrStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// Dressed spin susceptibility `chi_rs` at `omega + i delta`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_susceptibility(
    model: *const CrSpinModel,
    r: CrOperator,
    s: CrOperator,
    omega: f64,
    delta: f64,
    out: *mut CrComplex,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, out.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        let w = match frequency(omega, delta) {
            Ok(w) => w,
            Err(st) => return st,
        };
        let resp = match m.0.response(w) {
            Ok(resp) => resp,
            Err(e) => return from_error(e.into()),
        };
        match resp.matter.get(operator(r), operator(s)) {
            Some(v) => {
                unsafe { *out = complex(v) };
                CrStatus::Ok
            }
            None => fail(CrStatus::InvalidArgument, "operator not part of this model's response"),
        }
    })
}

/// Collective-mode frequencies in `[lo, hi]`. `*count` receives the
/// number of modes even when `cap` is too small.
///
/// # Safety
/// `model` must be a live handle, `buf` valid for `cap` doubles and
/// `count` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_spin_model_poles(
    model: *const CrSpinModel,
    lo: f64,
    hi: f64,
    buf: *mut f64,
    cap: usize,
    count: *mut usize,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, count.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return fail(CrStatus::InvalidArgument, "need finite lo < hi");
        }
        copy_list(&m.0.poles(lo, hi), buf, cap, count)
    })
}

/// Create the electron-gas model.
///
/// # Safety
/// `params` must point to a valid `CrQheParams` and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cr_qhe_model_new(params: *const CrQheParams, out: *mut *mut CrQheModel) -> CrStatus {
    guarded(|| {
        if params.is_null() || out.is_null() {
            return fail(CrStatus::NullPointer, "null argument");
        }
        let p = unsafe { *params };
        let spec = QheSpec {
            cavity_freq: p.cavity_freq,
            plasma_freq: p.plasma_freq,
            cyclotron_freq: p.cyclotron_freq,
            filling: p.filling,
        };
        match QheModel::new(&spec) {
            Ok(m) => {
                unsafe { *out = Box::into_raw(Box::new(CrQheModel(m))) };
                CrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Release a handle from [`cr_qhe_model_new`]. NULL is ignored.
///
/// # Safety
/// `model` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cr_qhe_model_free(model: *mut CrQheModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Conductivity tensor at `omega + i delta`; `delta` doubles as the
/// transport scattering rate.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_qhe_conductivity(
    model: *const CrQheModel,
    omega: f64,
    delta: f64,
    out: *mut CrConductivity,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, out.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        let w = match frequency(omega, delta) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match conductivity(&m.0.spec, w) {
            Ok(c) => {
                unsafe {
                    *out = CrConductivity { xx: complex(c.xx), xy: complex(c.xy), yx: complex(c.yx), yy: complex(c.yy) }
                };
                CrStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// Lower and upper Landau polariton.
///
/// # Safety
/// `model` must be a live handle; `lower` and `upper` writable.
#[no_mangle]
pub unsafe extern "C" fn cr_qhe_landau_polaritons(
    model: *const CrQheModel,
    lower: *mut f64,
    upper: *mut f64,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false, false) = (unsafe { model.as_ref() }, lower.is_null(), upper.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        let (lo, hi) = landau_polaritons(&m.0.spec);
        unsafe {
            *lower = lo;
            *upper = hi;
        }
        CrStatus::Ok
    })
}

/// Collective-mode frequencies of the electron gas in `[lo, hi]`.
///
/// # Safety
/// As [`cr_spin_model_poles`].
#[no_mangle]
pub unsafe extern "C" fn cr_qhe_model_poles(
    model: *const CrQheModel,
    lo: f64,
    hi: f64,
    buf: *mut f64,
    cap: usize,
    count: *mut usize,
) -> CrStatus {
    guarded(|| {
        let (Some(m), false) = (unsafe { model.as_ref() }, count.is_null()) else {
            return fail(CrStatus::NullPointer, "null argument");
        };
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return fail(CrStatus::InvalidArgument, "need finite lo < hi");
        }
        copy_list(&m.0.poles(lo, hi), buf, cap, count)
    })
}
