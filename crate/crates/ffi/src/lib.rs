//! C ABI over `casimir-core`.
//!
//! Every function returns a [`CasimirStatus`] and writes its result through an
//! out pointer. On failure the message is kept per thread and can be read with
//! [`casimir_last_error`]. A null policy handle selects the default policy.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use casimir_core::analysis::find_critical_aspect_t0;
use casimir_core::em::{em_energy_finite_t, em_energy_t0};
use casimir_core::error::CasimirError;
use casimir_core::fermion::{
    evaluate, parallel_plate, waveguide_finite_t, waveguide_t0, Axis, BoxGeometry, ThermalState,
};
use casimir_core::identity::{IdentityKind, VERIFY_REL_TOL};
use casimir_core::series::{ErrorMode, PrecisionPolicy, SeriesValue};

pub const CASIMIR_AXIS_A: u32 = 0;
pub const CASIMIR_AXIS_B: u32 = 1;
pub const CASIMIR_AXIS_C: u32 = 2;

pub const CASIMIR_IDENTITY_SCHLOMILCH: u32 = 0;
pub const CASIMIR_IDENTITY_ONE_PARTITION: u32 = 1;
pub const CASIMIR_IDENTITY_ONE_SUM: u32 = 2;
pub const CASIMIR_IDENTITY_TWO_SUM: u32 = 3;
pub const CASIMIR_IDENTITY_TWO_PARTITION: u32 = 4;
pub const CASIMIR_IDENTITY_THREE_SUM: u32 = 5;
pub const CASIMIR_IDENTITY_THREE_PARTITION: u32 = 6;
pub const CASIMIR_IDENTITY_THREE_PARTITION_PLUS: u32 = 7;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirStatus {
    Ok = 0,
    InvalidArgument = 1,
    NonConvergence = 2,
    NullPointer = 3,
    BracketFailure = 4,
    Panic = 5,
}

/// A value with its a posteriori error bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirValue {
    pub value: f64,
    pub error_bound: f64,
}

impl From<SeriesValue> for CasimirValue {
    fn from(v: SeriesValue) -> Self {
        CasimirValue {
            value: v.value,
            error_bound: v.error_bound,
        }
    }
}

/// Opaque precision policy.
pub struct CasimirPolicy {
    inner: PrecisionPolicy,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &CasimirError) -> CasimirStatus {
    match e {
        CasimirError::NonConvergence { .. } | CasimirError::Quadrature(_) => CasimirStatus::NonConvergence,
        CasimirError::Bracket { .. } => CasimirStatus::BracketFailure,
        CasimirError::Domain(_) | CasimirError::UnsupportedOrder(_) | CasimirError::InvalidPolicy(_) => {
            CasimirStatus::InvalidArgument
        }
    }
}

enum Failure {
    Core(CasimirError),
    Null(&'static str),
    Arg(String),
}

impl From<CasimirError> for Failure {
    fn from(e: CasimirError) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, turning errors and panics into a status.
fn guard<F>(f: F) -> CasimirStatus
where
    F: FnOnce() -> Result<(), Failure> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => CasimirStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("{name} is null"));
            CasimirStatus::NullPointer
        }
        Ok(Err(Failure::Arg(m))) => {
            set_error(m);
            CasimirStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic".to_string());
            CasimirStatus::Panic
        }
    }
}

unsafe fn policy_of(p: *const CasimirPolicy) -> PrecisionPolicy {
    if p.is_null() {
        PrecisionPolicy::default()
    } else {
        (*p).inner
    }
}

unsafe fn put<T>(out: *mut T, name: &'static str, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(v);
    Ok(())
}

fn axis_of(axis: u32) -> Result<Axis, Failure> {
    match axis {
        CASIMIR_AXIS_A => Ok(Axis::A),
        CASIMIR_AXIS_B => Ok(Axis::B),
        CASIMIR_AXIS_C => Ok(Axis::C),
        _ => Err(Failure::Arg(format!("unknown axis {axis}"))),
    }
}

/// Creates a policy with the given relative tolerance and per-axis term cap.
/// Returns null if the values are invalid.
#[no_mangle]
pub extern "C" fn casimir_policy_new(rel_tol: f64, max_index: u64) -> *mut CasimirPolicy {
    match PrecisionPolicy::new(rel_tol, 1e-300, max_index, ErrorMode::GeometricTailBound) {
        Ok(inner) => Box::into_raw(Box::new(CasimirPolicy { inner })),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Creates the default policy.
#[no_mangle]
pub extern "C" fn casimir_policy_default() -> *mut CasimirPolicy {
    Box::into_raw(Box::new(CasimirPolicy {
        inner: PrecisionPolicy::default(),
    }))
}

/// Frees a policy; null is ignored.
///
/// # Safety
/// `policy` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn casimir_policy_free(policy: *mut CasimirPolicy) {
    if !policy.is_null() {
        drop(Box::from_raw(policy));
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn casimir_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn casimir_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains a nul byte"),
    };
    VERSION.as_ptr()
}

/// Fermion free energy of the box `a × b × c` at temperature `t` (`t = 0`
/// for the vacuum energy).
///
/// # Safety
/// `policy` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn casimir_fermion_energy(
    policy: *const CasimirPolicy,
    a: f64,
    b: f64,
    c: f64,
    t: f64,
    out: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        let r = evaluate(&BoxGeometry::new(a, b, c)?, &ThermalState::new(t)?, &[], &p)?;
        put(out, "out", r.energy.into())
    })
}

/// Fermion force on the walls normal to `axis` (one of `CASIMIR_AXIS_*`).
///
/// # Safety
/// As for [`casimir_fermion_energy`].
#[no_mangle]
pub unsafe extern "C" fn casimir_fermion_force(
    policy: *const CasimirPolicy,
    a: f64,
    b: f64,
    c: f64,
    t: f64,
    axis: u32,
    out: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        let axis = axis_of(axis)?;
        let r = evaluate(&BoxGeometry::new(a, b, c)?, &ThermalState::new(t)?, &[axis], &p)?;
        put(out, "out", r.force(axis).expect("requested").into())
    })
}

/// Fermion waveguide with cross-section `b × c`, per unit length.
///
/// # Safety
/// `policy` must be null or a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn casimir_fermion_waveguide(
    policy: *const CasimirPolicy,
    b: f64,
    c: f64,
    t: f64,
    energy: *mut CasimirValue,
    force_b: *mut CasimirValue,
    force_c: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        let th = ThermalState::new(t)?;
        let w = if th.is_zero() {
            waveguide_t0(b, c, &p)?
        } else {
            waveguide_finite_t(b, c, &th, &p)?
        };
        put(energy, "energy", w.energy.into())?;
        put(force_b, "force_b", w.force_b.into())?;
        put(force_c, "force_c", w.force_c.into())
    })
}

/// Fermion parallel plates at separation `b`, per unit area.
///
/// # Safety
/// `policy` must be null or a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn casimir_fermion_plate(
    policy: *const CasimirPolicy,
    b: f64,
    t: f64,
    energy: *mut CasimirValue,
    force: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        let r = parallel_plate(b, &ThermalState::new(t)?, &p)?;
        put(energy, "energy", r.energy.into())?;
        put(force, "force", r.force.into())
    })
}

/// Physical electromagnetic free energy of the box; at `t = 0` the
/// renormalized vacuum energy.
///
/// # Safety
/// As for [`casimir_fermion_energy`].
#[no_mangle]
pub unsafe extern "C" fn casimir_em_energy(
    policy: *const CasimirPolicy,
    a: f64,
    b: f64,
    c: f64,
    t: f64,
    out: *mut CasimirValue,
) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        let g = BoxGeometry::new(a, b, c)?;
        let th = ThermalState::new(t)?;
        let v = if th.is_zero() {
            em_energy_t0(&g, &p)?
        } else {
            em_energy_finite_t(&g, &th, &p)?.f_phys
        };
        put(out, "out", v.into())
    })
}

/// Checks one lattice-sum identity (`CASIMIR_IDENTITY_*`) with `n_params`
/// parameters and writes the number of agreeing digits. A null policy uses
/// the verification tolerance.
///
/// # Safety
/// `params` must point to `n_params` readable doubles; `digits` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn casimir_verify_identity(
    policy: *const CasimirPolicy,
    kind: u32,
    params: *const f64,
    n_params: usize,
    digits: *mut i32,
) -> CasimirStatus {
    guard(|| {
        let p = if policy.is_null() {
            PrecisionPolicy::default().with_rel_tol(VERIFY_REL_TOL)?
        } else {
            (*policy).inner
        };
        let kind = *IdentityKind::ALL
            .get(kind as usize)
            .ok_or_else(|| Failure::Arg(format!("unknown identity {kind}")))?;
        if params.is_null() {
            return Err(Failure::Null("params"));
        }
        let values = std::slice::from_raw_parts(params, n_params);
        let report = kind.with_params(values)?.verify(&p)?;
        put(digits, "digits", report.digits_agreed)
    })
}

/// Cross-section ratio `c/b` at which the zero-temperature waveguide force
/// along `c` changes sign.
///
/// # Safety
/// `policy` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn casimir_critical_aspect_t0(policy: *const CasimirPolicy, out: *mut f64) -> CasimirStatus {
    guard(|| {
        let p = policy_of(policy);
        put(out, "out", find_critical_aspect_t0(&p)?.root)
    })
}
