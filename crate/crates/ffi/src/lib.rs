//! C ABI over `exunit`.
//!
//! Polynomials and fields are opaque heap handles released with their
//! `_free` function. Every fallible call returns an [`ExuStatus`]; on failure
//! [`exu_last_error`] describes the cause for the calling thread. Strings
//! handed out by the library must be released with [`exu_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use exunit::chabauty::{certify_no_exceptional_units, CertifyOutcome, HypothesisFailure};
use exunit::cli;
use exunit::numfield::{self, NumberField, SplitDecision};
use exunit::polyint::IntPoly;
use exunit::search::{self, CycleBound};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidPolynomial = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExuSplit {
    Split = 0,
    NotSplit = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExuCertify {
    Certificate = 0,
    DegreeDivisibleBy3 = 1,
    NotSplit = 2,
    Inconclusive = 3,
}

/// Integer polynomial.
pub struct ExuPoly(IntPoly);

/// Number field `Q[x]/(g)` for monic irreducible `g`.
pub struct ExuField(NumberField);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: ExuStatus, message: impl Into<String>) -> ExuStatus {
    set_error(message);
    status
}

/// Runs `body`, mapping panics to [`ExuStatus::Internal`].
fn guard(body: impl FnOnce() -> ExuStatus) -> ExuStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(ExuStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ExuStatus> {
    if text.is_null() {
        return Err(fail(ExuStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(ExuStatus::InvalidUtf8, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn exu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn exu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an ascending coefficient list such as `"1,-42,39,1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exu_poly_parse(text: *const c_char, out: *mut *mut ExuPoly) -> ExuStatus {
    guard(|| {
        if out.is_null() {
            return fail(ExuStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::parse_poly(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(ExuPoly(g)));
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `poly` must come from [`exu_poly_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn exu_poly_free(poly: *mut ExuPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of `poly`, `-1` for the zero polynomial.
///
/// # Safety
/// `poly` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_poly_degree(poly: *const ExuPoly, out: *mut i64) -> ExuStatus {
    guard(|| {
        if poly.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        *out = (*poly).0.degree().map_or(-1, |d| d as i64);
        ExuStatus::Ok
    })
}

/// Canonical coefficient list of `poly`; free with [`exu_string_free`].
///
/// # Safety
/// `poly` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_poly_to_string(
    poly: *const ExuPoly,
    out: *mut *mut c_char,
) -> ExuStatus {
    guard(|| {
        if poly.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        *out = into_c_string((*poly).0.to_csv());
        ExuStatus::Ok
    })
}

/// Builds `Q[x]/(g)`; fails unless `g` is monic and irreducible.
///
/// # Safety
/// `poly` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_field_new(poly: *const ExuPoly, out: *mut *mut ExuField) -> ExuStatus {
    guard(|| {
        if poly.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        match NumberField::new((*poly).0.clone()) {
            Ok(k) => {
                *out = Box::into_raw(Box::new(ExuField(k)));
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::InvalidPolynomial, e.to_string()),
        }
    })
}

/// # Safety
/// `field` must come from [`exu_field_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn exu_field_free(field: *mut ExuField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_field_degree(field: *const ExuField, out: *mut usize) -> ExuStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        *out = (*field).0.degree();
        ExuStatus::Ok
    })
}

/// Whether `prime` splits completely in `field`.
///
/// # Safety
/// `field` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_splits_completely(
    field: *const ExuField,
    prime: u32,
    out: *mut ExuSplit,
) -> ExuStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        match numfield::splits_completely((*field).0.defining(), prime) {
            Ok(d) => {
                *out = match d {
                    SplitDecision::Split => ExuSplit::Split,
                    SplitDecision::NotSplit => ExuSplit::NotSplit,
                    SplitDecision::Inconclusive => ExuSplit::Inconclusive,
                };
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Runs the certifier. When `report` is non-null it receives the JSON
/// report, to be released with [`exu_string_free`].
///
/// # Safety
/// `field` and `out` must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn exu_certify(
    field: *const ExuField,
    out: *mut ExuCertify,
    report: *mut *mut c_char,
) -> ExuStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        let g = (*field).0.defining();
        let outcome = match certify_no_exceptional_units(g) {
            Ok(o) => o,
            Err(e) => return fail(ExuStatus::InvalidPolynomial, e.to_string()),
        };
        *out = match outcome {
            CertifyOutcome::Certificate(_) => ExuCertify::Certificate,
            CertifyOutcome::HypothesisFail(HypothesisFailure::DegreeDivisibleBy3) => {
                ExuCertify::DegreeDivisibleBy3
            }
            CertifyOutcome::HypothesisFail(HypothesisFailure::NotSplit) => ExuCertify::NotSplit,
            CertifyOutcome::Inconclusive { .. } => ExuCertify::Inconclusive,
        };
        if !report.is_null() {
            let csv = g.to_csv();
            let run = cli::run([
                "exunit",
                "--format",
                "json",
                "certify",
                "--poly",
                csv.as_str(),
            ]);
            *report = into_c_string(run.stdout.trim_end().to_string());
        }
        ExuStatus::Ok
    })
}

/// Whether the element with power-basis coordinates `coords` (comma
/// separated rationals) and `1 - x` are both units of `Z[a]`.
///
/// # Safety
/// `field`, `coords` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_is_exceptional_unit(
    field: *const ExuField,
    coords: *const c_char,
    out: *mut bool,
) -> ExuStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        let text = match read_str(coords) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let k = &(*field).0;
        match k.parse_element(text) {
            Ok(x) => {
                *out = k.is_exceptional_unit(&x);
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::Parse, e.to_string()),
        }
    })
}

/// Writes the admissible cycle lengths into `lengths` (capacity `capacity`)
/// and their count into `len`; `len = 0` means no bound is available.
///
/// # Safety
/// `field`, `len` and a `lengths` buffer of `capacity` entries must be valid.
#[no_mangle]
pub unsafe extern "C" fn exu_cycle_bound(
    field: *const ExuField,
    lengths: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> ExuStatus {
    guard(|| {
        if field.is_null() || len.is_null() || (lengths.is_null() && capacity > 0) {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        match search::cycle_bound((*field).0.defining()) {
            Ok(CycleBound::Lengths { lengths: ls, .. }) => {
                *len = ls.len();
                if ls.len() > capacity {
                    return fail(ExuStatus::BufferTooSmall, "length buffer too small");
                }
                ptr::copy_nonoverlapping(ls.as_ptr(), lengths, ls.len());
                ExuStatus::Ok
            }
            Ok(CycleBound::NoBound(_)) => {
                *len = 0;
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Runs the census and reports the number of hits and of undecided
/// candidates.
///
/// # Safety
/// `hits` and `inconclusive` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exu_search_count(
    degree: usize,
    height: u32,
    prime: u32,
    jobs: usize,
    hits: *mut usize,
    inconclusive: *mut usize,
) -> ExuStatus {
    guard(|| {
        if hits.is_null() || inconclusive.is_null() {
            return fail(ExuStatus::NullPointer, "null pointer");
        }
        match search::search_split_exceptional(degree, height, prime, jobs) {
            Ok(r) => {
                *hits = r.hits.len();
                *inconclusive = r.inconclusive.len();
                ExuStatus::Ok
            }
            Err(e) => fail(ExuStatus::InvalidArgument, e.to_string()),
        }
    })
}
