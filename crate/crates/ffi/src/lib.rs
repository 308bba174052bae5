//! C ABI over the orbifold crate.
//!
//! Every fallible call returns an [`OrbifoldStatus`]; on failure the message
//! is available from [`orbifold_last_error`] on the same thread. Handles are
//! opaque and must be released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbifold::double::{double_modular_data, DoubleModel};
use orbifold::equivariant::{match_to_double, Orbifold};
use orbifold::group::DEFAULT_ORDER_CAP;
use orbifold::scalars::ToleranceConfig;
use orbifold::suite::{emit_report, resolve_instance, run_verify_suite, Format, SuiteConfig, SuiteReport};
use orbifold::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbifoldStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OrderCap = 4,
    NotNormal = 5,
    BadSelector = 6,
    Degenerate = 7,
    Numerical = 8,
    Falsified = 9,
    BufferTooSmall = 10,
    Invalid = 11,
    Panic = 12,
}

impl From<&Error> for OrbifoldStatus {
    fn from(e: &Error) -> Self {
        match e {
            _ if e.is_falsification() => OrbifoldStatus::Falsified,
            Error::Parse { .. } => OrbifoldStatus::Parse,
            Error::OrderCap { .. } => OrbifoldStatus::OrderCap,
            Error::NotNormal { .. } => OrbifoldStatus::NotNormal,
            Error::AmbiguousSelector { .. } | Error::NoSuchSubgroup { .. } => OrbifoldStatus::BadSelector,
            Error::Degenerate { .. } => OrbifoldStatus::Degenerate,
            Error::SplitFailure { .. }
            | Error::NotACharacter { .. }
            | Error::CocycleInvalid { .. }
            | Error::SchurViolation { .. }
            | Error::NonIntegralMultiplicity { .. } => OrbifoldStatus::Numerical,
            _ => OrbifoldStatus::Invalid,
        }
    }
}

/// A resolved (M, N) pair with its equivariantized category.
pub struct OrbifoldInstance {
    orbifold: Orbifold,
    double: Option<DoubleModel>,
}

/// Result of a verification run.
pub struct OrbifoldReport {
    report: SuiteReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn guard(f: impl FnOnce() -> Result<(), (OrbifoldStatus, String)>) -> OrbifoldStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrbifoldStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OrbifoldStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (OrbifoldStatus, String) {
    (OrbifoldStatus::from(&e), e.to_string())
}

fn null() -> (OrbifoldStatus, String) {
    (OrbifoldStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (OrbifoldStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (OrbifoldStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn orbifold_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn orbifold_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Resolve "<group>/<selector>" and build its orbifold data.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_new(
    spec: *const c_char,
    allow_degenerate: bool,
    seed: u64,
    out: *mut *mut OrbifoldInstance,
) -> OrbifoldStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let spec = read_str(spec)?;
        let inst = resolve_instance(spec, allow_degenerate, DEFAULT_ORDER_CAP).map_err(lib_err)?;
        let tol = ToleranceConfig::default().with_seed(seed);
        let orbifold = Orbifold::new(&inst.m, &inst.n, &tol).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(OrbifoldInstance { orbifold, double: None }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`orbifold_instance_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_free(h: *mut OrbifoldInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Orders of M and N.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_orders(
    h: *const OrbifoldInstance,
    group_order: *mut usize,
    subgroup_order: *mut usize,
) -> OrbifoldStatus {
    guard(|| {
        let (Some(h), false, false) = (h.as_ref(), group_order.is_null(), subgroup_order.is_null()) else {
            return Err(null());
        };
        *group_order = h.orbifold.rep.m.order();
        *subgroup_order = h.orbifold.rep.n.order();
        Ok(())
    })
}

/// Number of simple objects of Rep A.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_num_labels(h: *const OrbifoldInstance, out: *mut usize) -> OrbifoldStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = h.orbifold.rep.num_labels();
        Ok(())
    })
}

/// Dimensions of the simples of the equivariantization. When `buf` is null
/// or `cap` is too small, only `len` is written.
///
/// # Safety
/// `buf` must be null or point to `cap` writable elements; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_simple_dims(
    h: *const OrbifoldInstance,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OrbifoldStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), len.is_null()) else {
            return Err(null());
        };
        let dims: Vec<usize> = h.orbifold.d_simples.iter().map(|d| d.dim).collect();
        *len = dims.len();
        if buf.is_null() || cap < dims.len() {
            return Err((OrbifoldStatus::BufferTooSmall, format!("need room for {} entries", dims.len())));
        }
        std::slice::from_raw_parts_mut(buf, dims.len()).copy_from_slice(&dims);
        Ok(())
    })
}

/// Whether the simples match those of D(M); the D(M) data is cached on the handle.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbifold_instance_matches_double(h: *mut OrbifoldInstance, out: *mut bool) -> OrbifoldStatus {
    guard(|| {
        let (Some(h), false) = (h.as_mut(), out.is_null()) else {
            return Err(null());
        };
        if h.double.is_none() {
            h.double = Some(double_modular_data(&h.orbifold.rep.m).map_err(lib_err)?);
        }
        let dm = h.double.as_ref().expect("just built");
        *out = match_to_double(&h.orbifold, dm, "").map_err(lib_err)?.passed();
        Ok(())
    })
}

/// Run the verification suite on `count` instance specs, or on the default
/// catalog when `count` is 0.
///
/// # Safety
/// `specs` must point to `count` valid NUL-terminated strings (may be null
/// when `count` is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbifold_verify(
    specs: *const *const c_char,
    count: usize,
    seed: u64,
    out: *mut *mut OrbifoldReport,
) -> OrbifoldStatus {
    guard(|| {
        if out.is_null() || (specs.is_null() && count > 0) {
            return Err(null());
        }
        *out = ptr::null_mut();
        let mut cfg = SuiteConfig {
            tol: ToleranceConfig::default().with_seed(seed),
            ..Default::default()
        };
        if count > 0 {
            cfg.instances = std::slice::from_raw_parts(specs, count)
                .iter()
                .map(|&s| read_str(s).map(str::to_string))
                .collect::<Result<_, _>>()?;
        }
        let report = run_verify_suite(&cfg).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(OrbifoldReport { report }));
        Ok(())
    })
}

/// # Safety
/// `r` must be a valid report handle.
#[no_mangle]
pub unsafe extern "C" fn orbifold_report_passed(r: *const OrbifoldReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.passed)
}

/// Canonical JSON of a report; free the string with [`orbifold_string_free`].
///
/// # Safety
/// `r` must be a valid report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbifold_report_json(r: *const OrbifoldReport, out: *mut *mut c_char) -> OrbifoldStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let json = emit_report(&r.report, Format::Json);
        *out = CString::new(json).map_err(|_| (OrbifoldStatus::Invalid, "report contains NUL".into()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from [`orbifold_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbifold_report_free(r: *mut OrbifoldReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbifold_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
