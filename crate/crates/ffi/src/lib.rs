//! C interface to `repunit-core`.
//!
//! Objects are handed out as opaque pointers created by `*_new` and released
//! by the matching `*_free`. Every fallible call returns a [`RepunitStatus`];
//! on failure a message is available from [`repunit_last_error`] on the same
//! thread. Array outputs use the `(buf, cap, len_out)` convention: `len_out`
//! always receives the required length, and `RepunitStatus::BufferTooSmall`
//! is returned (with nothing written) when `cap` is smaller.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use repunit_core::complex::build_resolution;
use repunit_core::export::ResolutionDocument;
use repunit_core::verify::{verify, VerifyConfig};
use repunit_core::{Error, GradedComplex, RepunitParams, RepunitSemigroup};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepunitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    InvariantBreach = 5,
    VerificationFailed = 6,
    Panic = 7,
}

/// Opaque semigroup handle.
pub struct RepunitSemigroupHandle {
    inner: RepunitSemigroup,
}

/// Opaque resolution handle.
pub struct RepunitResolutionHandle {
    semigroup: RepunitSemigroup,
    complex: GradedComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|cell| *cell.borrow_mut() = msg);
}

fn status_of(e: &Error) -> RepunitStatus {
    match e {
        Error::Invariant(_) => RepunitStatus::InvariantBreach,
        Error::LevelOutOfRange { .. } | Error::NegativeElement(_) => RepunitStatus::OutOfRange,
        _ => RepunitStatus::InvalidParams,
    }
}

fn fail(e: Error) -> RepunitStatus {
    let status = status_of(&e);
    set_last_error(e.to_string());
    status
}

/// Runs `f`, converting a panic into `RepunitStatus::Panic`.
fn guard(f: impl FnOnce() -> RepunitStatus) -> RepunitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            RepunitStatus::Panic
        }
    }
}

unsafe fn write_slice(
    values: &[i64],
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> RepunitStatus {
    if len_out.is_null() {
        set_last_error("len_out is null");
        return RepunitStatus::NullPointer;
    }
    *len_out = values.len();
    if cap < values.len() {
        set_last_error(format!(
            "buffer holds {cap} values, {} needed",
            values.len()
        ));
        return RepunitStatus::BufferTooSmall;
    }
    if !values.is_empty() {
        if buf.is_null() {
            set_last_error("buf is null");
            return RepunitStatus::NullPointer;
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    RepunitStatus::Ok
}

macro_rules! deref_or_null {
    ($p:expr) => {
        match $p.as_ref() {
            Some(v) => v,
            None => {
                set_last_error(concat!(stringify!($p), " is null"));
                return RepunitStatus::NullPointer;
            }
        }
    };
}

macro_rules! out_or_null {
    ($p:expr) => {
        if $p.is_null() {
            set_last_error(concat!(stringify!($p), " is null"));
            return RepunitStatus::NullPointer;
        }
    };
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn repunit_last_error() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ptr())
}

/// Builds the semigroup for `(b, n, a)`.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_new(
    b: i64,
    n: i64,
    a: i64,
    out: *mut *mut RepunitSemigroupHandle,
) -> RepunitStatus {
    guard(|| {
        out_or_null!(out);
        match RepunitSemigroup::new(RepunitParams::new(b, n, a)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RepunitSemigroupHandle { inner }));
                RepunitStatus::Ok
            }
            Err(e) => {
                *out = ptr::null_mut();
                fail(e)
            }
        }
    })
}

/// Releases a semigroup. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_free(handle: *mut RepunitSemigroupHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_embedding_dimension(
    handle: *const RepunitSemigroupHandle,
    out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    *out = h.inner.embedding_dimension();
    RepunitStatus::Ok
}

/// Minimal generators `a1 .. an`.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_generators(
    handle: *const RepunitSemigroupHandle,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    write_slice(h.inner.generators(), buf, cap, len_out)
}

/// `a_(n+1) = (a + 1) a1`.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_extended(
    handle: *const RepunitSemigroupHandle,
    out: *mut i64,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    *out = h.inner.extended();
    RepunitStatus::Ok
}

/// `c = b^n - 1 - a`.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_c(
    handle: *const RepunitSemigroupHandle,
    out: *mut i64,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    *out = h.inner.c();
    RepunitStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_frobenius(
    handle: *const RepunitSemigroupHandle,
    out: *mut i64,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    *out = h.inner.frobenius();
    RepunitStatus::Ok
}

/// Membership test; negative `s` gives `OutOfRange`.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_contains(
    handle: *const RepunitSemigroupHandle,
    s: i64,
    out: *mut bool,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    match h.inner.contains(s) {
        Ok(v) => {
            *out = v;
            RepunitStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Pseudo-Frobenius elements from the closed form, ascending.
#[no_mangle]
pub unsafe extern "C" fn repunit_semigroup_pseudo_frobenius(
    handle: *const RepunitSemigroupHandle,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    match h.inner.pf_formula() {
        Ok(pf) => write_slice(&pf, buf, cap, len_out),
        Err(e) => fail(e),
    }
}

/// Builds the resolution of the semigroup algebra. The semigroup handle is
/// not consumed.
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_new(
    handle: *const RepunitSemigroupHandle,
    out: *mut *mut RepunitResolutionHandle,
) -> RepunitStatus {
    guard(|| {
        let h = deref_or_null!(handle);
        out_or_null!(out);
        *out = ptr::null_mut();
        match build_resolution(&h.inner) {
            Ok(complex) => {
                *out = Box::into_raw(Box::new(RepunitResolutionHandle {
                    semigroup: h.inner.clone(),
                    complex,
                }));
                RepunitStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a resolution. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_free(handle: *mut RepunitResolutionHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of levels, `n - 1`.
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_length(
    handle: *const RepunitResolutionHandle,
    out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    *out = h.complex.length();
    RepunitStatus::Ok
}

fn level_or_fail(
    h: &RepunitResolutionHandle,
    j: usize,
) -> Result<&repunit_core::Level, RepunitStatus> {
    h.complex.level(j).ok_or_else(|| {
        fail(Error::LevelOutOfRange {
            j,
            max: h.complex.length(),
        })
    })
}

/// Rank of the free module at level `j` (1-based).
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_betti(
    handle: *const RepunitResolutionHandle,
    j: usize,
    out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    out_or_null!(out);
    match level_or_fail(h, j) {
        Ok(level) => {
            *out = level.shifts.len();
            RepunitStatus::Ok
        }
        Err(status) => status,
    }
}

/// Shifts of level `j` in basis order.
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_shifts(
    handle: *const RepunitResolutionHandle,
    j: usize,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> RepunitStatus {
    let h = deref_or_null!(handle);
    match level_or_fail(h, j) {
        Ok(level) => write_slice(&level.shifts, buf, cap, len_out),
        Err(status) => status,
    }
}

/// The resolution as a JSON document; release with [`repunit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn repunit_resolution_to_json(
    handle: *const RepunitResolutionHandle,
    out: *mut *mut c_char,
) -> RepunitStatus {
    guard(|| {
        let h = deref_or_null!(handle);
        out_or_null!(out);
        let json = ResolutionDocument::new(&h.semigroup, &h.complex).to_json();
        match CString::new(json) {
            Ok(s) => {
                *out = s.into_raw();
                RepunitStatus::Ok
            }
            Err(_) => {
                set_last_error("JSON contains a NUL byte");
                RepunitStatus::Panic
            }
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn repunit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the full verification pipeline. `passed_out` and `total_out`
/// (either may be null) receive the check counts. Returns `Ok` iff every
/// check passed, `VerificationFailed` otherwise.
#[no_mangle]
pub unsafe extern "C" fn repunit_verify(
    handle: *const RepunitSemigroupHandle,
    prime: u64,
    trials: usize,
    passed_out: *mut usize,
    total_out: *mut usize,
) -> RepunitStatus {
    guard(|| {
        let h = deref_or_null!(handle);
        let config = VerifyConfig {
            prime,
            trials,
            ..VerifyConfig::default()
        };
        match verify(&h.inner, &config) {
            Ok(report) => {
                if !passed_out.is_null() {
                    *passed_out = report.passed_count();
                }
                if !total_out.is_null() {
                    *total_out = report.checks.len();
                }
                if report.all_passed() {
                    RepunitStatus::Ok
                } else {
                    set_last_error(report.to_string());
                    RepunitStatus::VerificationFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Copy of the last error message as an owned Rust string (test helper).
pub fn last_error_string() -> String {
    unsafe { CStr::from_ptr(repunit_last_error()) }
        .to_string_lossy()
        .into_owned()
}
