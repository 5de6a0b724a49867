//! C ABI over the `heffter` crate.
//!
//! Arrays are opaque handles created by [`heffter_construct`] or
//! [`heffter_array_from_json`] and released with [`heffter_array_free`].
//! Every fallible call returns a [`HeffterStatus`]; on failure the message is
//! available from [`heffter_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heffter::io::ArrayFile;
use heffter::{construct, verify_full, Error, Mode, Parameters};

/// Opaque array handle.
pub struct HeffterArray {
    file: ArrayFile,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeffterStatus {
    Ok = 0,
    InvalidArgument = 1,
    NonExistent = 2,
    OpenCase = 3,
    VerificationFailed = 4,
    ParseError = 5,
    NullPointer = 6,
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: HeffterStatus, msg: impl Into<String>) -> HeffterStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> HeffterStatus {
    match e {
        Error::NonExistent(_) => HeffterStatus::NonExistent,
        Error::OpenCase { .. } => HeffterStatus::OpenCase,
        Error::VerificationFailed(_) => HeffterStatus::VerificationFailed,
        Error::Parse(_) => HeffterStatus::ParseError,
        Error::NonPositive
        | Error::DimensionMismatch { .. }
        | Error::InvalidT { .. }
        | Error::Overflow
        | Error::PreconditionViolated(_) => HeffterStatus::InvalidArgument,
        _ => HeffterStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> HeffterStatus) -> HeffterStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HeffterStatus::Internal, "panic inside heffter"))
}

fn emit(file: ArrayFile, out: *mut *mut HeffterArray) -> HeffterStatus {
    // SAFETY: callers check `out` for null before reaching here.
    unsafe { *out = Box::into_raw(Box::new(HeffterArray { file })) };
    HeffterStatus::Ok
}

/// Builds and verifies an integer `H_t(m, n; s, k)`. On success `*out` receives
/// a handle owned by the caller.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn heffter_construct(
    m: u64,
    n: u64,
    s: u64,
    k: u64,
    t: u64,
    out: *mut *mut HeffterArray,
) -> HeffterStatus {
    if out.is_null() {
        return fail(HeffterStatus::NullPointer, "out is null");
    }
    guarded(|| {
        let p = match Parameters::derive(m, n, s, k, t) {
            Ok(p) => p,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        match construct(&p) {
            Ok(c) => emit(ArrayFile::new(p, c.trace, c.array), out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_rows(a: *const HeffterArray) -> usize {
    a.as_ref().map_or(0, |a| a.file.array.rows())
}

/// Number of columns, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_cols(a: *const HeffterArray) -> usize {
    a.as_ref().map_or(0, |a| a.file.array.cols())
}

/// Reads cell `(row, col)`, 1-based. Returns true and writes `*value` if the
/// cell is filled; returns false for empty or out-of-range cells.
///
/// # Safety
/// `a` must be null or a live handle; `value` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_get(
    a: *const HeffterArray,
    row: usize,
    col: usize,
    value: *mut i64,
) -> bool {
    let Some(a) = a.as_ref() else { return false };
    match a.file.array.get(row, col) {
        Some(v) => {
            if !value.is_null() {
                *value = v;
            }
            true
        }
        None => false,
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_free(a: *mut HeffterArray) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses the JSON array format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_from_json(
    json: *const c_char,
    out: *mut *mut HeffterArray,
) -> HeffterStatus {
    if json.is_null() || out.is_null() {
        return fail(HeffterStatus::NullPointer, "json or out is null");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(s) => s,
        Err(e) => return fail(HeffterStatus::ParseError, e.to_string()),
    };
    guarded(|| match ArrayFile::from_json(text) {
        Ok(f) => emit(f, out),
        Err(e) => fail(status_of(&e), e.to_string()),
    })
}

/// Serializes to the JSON array format. Free the result with
/// [`heffter_string_free`]. Returns null for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn heffter_array_to_json(a: *const HeffterArray) -> *mut c_char {
    match a.as_ref() {
        Some(a) => CString::new(a.file.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("array is null");
            ptr::null_mut()
        }
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from [`heffter_array_to_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heffter_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verifies a handle against its own parameters. Returns `Ok` if it passes,
/// `VerificationFailed` otherwise, with the report as the last error message.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn heffter_verify(a: *const HeffterArray, simple: bool) -> HeffterStatus {
    let Some(a) = a.as_ref() else {
        return fail(HeffterStatus::NullPointer, "array is null");
    };
    guarded(|| {
        let mode = if simple { Mode::Simple } else { Mode::Integer };
        let report = verify_full(&a.file.array, &a.file.params, mode);
        if report.overall {
            HeffterStatus::Ok
        } else {
            fail(HeffterStatus::VerificationFailed, report.to_string())
        }
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn heffter_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
