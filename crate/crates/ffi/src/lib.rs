//! C interface to `ringgroom`.
//!
//! Decompositions cross the boundary as opaque `RgDecomposition` handles
//! that the caller releases with `rg_decomposition_free`. Every fallible call
//! returns an `RgStatus`; on failure `rg_last_error` describes the problem
//! until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ringgroom::construct::{build, BuildRequest};
use ringgroom::formulas::{cost_two_period, triangle_lower_bound, wavecost_mon};
use ringgroom::oracle::{solve_min_cost, Budget};
use ringgroom::{verify, Decomposition, Error, Instance};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInstance = 2,
    Unsupported = 3,
    ConstructionFailed = 4,
    ParseError = 5,
    BudgetExhausted = 6,
    Internal = 7,
}

/// A decomposition owned by the library.
pub struct RgDecomposition(Decomposition);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RgTriangleBound {
    /// `L(v,w)` times 6.
    pub l_num: i64,
    pub delta_min: u64,
    pub residue: u64,
    pub slack_ceiling: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RgReport {
    pub valid: bool,
    pub violations: usize,
    pub drop_cost: usize,
    pub wavecost: usize,
    pub triangles: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: Error) -> RgStatus {
    let status = match &e {
        Error::InvalidInstance(_) | Error::Contract(_) => RgStatus::InvalidInstance,
        Error::Unsupported(_) | Error::UnknownFixture(_) => RgStatus::Unsupported,
        Error::Construction { .. } => RgStatus::ConstructionFailed,
        Error::Parse(_) | Error::Json(_) => RgStatus::ParseError,
    };
    set_error(e.to_string());
    status
}

fn null(what: &str) -> RgStatus {
    set_error(format!("{what} is null"));
    RgStatus::NullPointer
}

/// Runs `f`, turning a panic into `RgStatus::Internal`.
fn guard(f: impl FnOnce() -> RgStatus) -> RgStatus {
    clear_error();
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic".into());
        RgStatus::Internal
    })
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an optimal `N(n,v;4,cprime)`; with `mon` the wavelength count is
/// minimised too. On success `*out` owns a new handle.
///
/// # Safety
/// `out` must be null or point to writable storage for a pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_build(
    n: u32,
    v: u32,
    cprime: u32,
    mon: bool,
    seed: u64,
    out: *mut *mut RgDecomposition,
) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match BuildRequest::new(n, v, cprime).and_then(|r| build(&r.mon(mon).seed(seed))) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(RgDecomposition(d)));
                RgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses decomposition JSON.
///
/// # Safety
/// `json` must be null or a nul-terminated string; `out` as for [`rg_build`].
#[no_mangle]
pub unsafe extern "C" fn rg_decomposition_from_json(json: *const c_char, out: *mut *mut RgDecomposition) -> RgStatus {
    guard(|| {
        if json.is_null() {
            return null("json");
        }
        if out.is_null() {
            return null("out");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => return fail(Error::Parse(e.to_string())),
        };
        match Decomposition::from_json(text) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(RgDecomposition(d)));
                RgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Serializes a decomposition. The string is released with [`rg_string_free`].
///
/// # Safety
/// `d` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_decomposition_to_json(d: *const RgDecomposition, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let Some(d) = d.as_ref() else { return null("decomposition") };
        if out.is_null() {
            return null("out");
        }
        let s = CString::new(d.0.to_json()).expect("JSON has no nul bytes");
        *out = s.into_raw();
        RgStatus::Ok
    })
}

/// Checks a decomposition and fills `*report`.
///
/// # Safety
/// `d` must be null or a live handle; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_decomposition_verify(d: *const RgDecomposition, report: *mut RgReport) -> RgStatus {
    guard(|| {
        let Some(d) = d.as_ref() else { return null("decomposition") };
        if report.is_null() {
            return null("report");
        }
        let r = verify(&d.0);
        *report = RgReport {
            valid: r.valid,
            violations: r.violations.len(),
            drop_cost: r.drop_cost,
            wavecost: r.wavecost,
            triangles: r.triangle_count,
        };
        RgStatus::Ok
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `d` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rg_decomposition_free(d: *mut RgDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Optimal drop cost from the closed form.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_cost_two_period(n: u32, v: u32, cprime: u32, out: *mut u64) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match cost_two_period(n, v, cprime) {
            Ok(c) => {
                *out = c;
                RgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Fewest wavelengths over cost-optimal groomings, from the closed form.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_wavecost_mon(n: u32, v: u32, cprime: u32, out: *mut u64) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match wavecost_mon(n, v, cprime) {
            Ok(c) => {
                *out = c;
                RgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Triangle bound for `C' = 3`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_triangle_lower_bound(v: u32, w: u32, out: *mut RgTriangleBound) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let b = triangle_lower_bound(v, w);
        *out = RgTriangleBound { l_num: b.l_num, delta_min: b.delta_min, residue: b.residue, slack_ceiling: b.slack_ceiling };
        RgStatus::Ok
    })
}

/// Exact minimum drop cost by search, `n <= 8`. `nodes = 0` uses the
/// default budget. On `BudgetExhausted`, `*out` holds an upper bound.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rg_oracle_min_cost(n: u32, v: u32, cprime: u32, nodes: u64, out: *mut u64) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let mut budget = Budget::default();
        if nodes > 0 {
            budget.nodes = nodes;
        }
        match Instance::new(n, v, cprime).and_then(|i| solve_min_cost(i, budget)) {
            Ok(r) => {
                *out = r.optimum_cost as u64;
                if r.time_limit_hit {
                    set_error(format!("node budget of {} exhausted", budget.nodes));
                    RgStatus::BudgetExhausted
                } else {
                    RgStatus::Ok
                }
            }
            Err(e) => fail(e),
        }
    })
}
