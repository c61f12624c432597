//! C ABI over `dualpoly`.
//!
//! Every entry point returns a [`DpStatus`]. Results come back through out
//! pointers. Handles are opaque and must be released with their `_free`
//! function; strings returned by the library must be released with
//! [`dp_string_free`]. After a non-OK status, [`dp_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dualpoly::dual_or::{self, OrCertificate};
use dualpoly::{lp_degree, Error, Rat, SinglePoly, SymBoolFn};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Argument outside the supported domain, such as `n < 2` for OR.
    Domain = 3,
    /// Malformed number or document.
    Parse = 4,
    /// Well-formed input that fails a mathematical check.
    Rejected = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Opaque OR certificate.
pub struct DpCertificate {
    inner: OrCertificate,
}

/// Opaque symmetric polynomial, stored by its values at Hamming weights `0..=n`.
pub struct DpPoly {
    inner: SinglePoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> DpStatus {
    match err {
        Error::Parse(_) => DpStatus::Parse,
        Error::CheckFailed(_) => DpStatus::Rejected,
        _ => DpStatus::Domain,
    }
}

fn fail(err: Error) -> DpStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

/// Runs `f`, turning a panic into [`DpStatus::Internal`].
fn guard(f: impl FnOnce() -> DpStatus) -> DpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            DpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DpStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(DpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        DpStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> DpStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DpStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            DpStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return DpStatus::NullPointer;
        })+
    };
}

macro_rules! try_str {
    ($p:expr) => {
        match read_str($p) {
            Ok(s) => s,
            Err(status) => return status,
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds and self-checks the OR certificate for `n >= 2` bits.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn dp_or_certificate_new(n: usize, out: *mut *mut DpCertificate) -> DpStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| match dual_or::make_certificate(n) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(DpCertificate { inner }));
            DpStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `cert` must be NULL or a handle from [`dp_or_certificate_new`].
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_free(cert: *mut DpCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Pure high degree of the certificate, which is the proven degree bound.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_phd(
    cert: *const DpCertificate,
    out: *mut usize,
) -> DpStatus {
    non_null!(cert, out);
    *out = (*cert).inner.phd;
    DpStatus::Ok
}

/// `‖q‖₁ / (q · OR)` as an exact `num/den` string.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_ratio(
    cert: *const DpCertificate,
    out: *mut *mut c_char,
) -> DpStatus {
    non_null!(cert, out);
    write_string(out, (*cert).inner.ratio.to_string())
}

/// The serialized certificate document.
///
/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_certificate_document(
    cert: *const DpCertificate,
    out: *mut *mut c_char,
) -> DpStatus {
    non_null!(cert, out);
    guard(|| write_string(out, (*cert).inner.to_document().to_string()))
}

/// Verifies a certificate or witness document. `eps` may be NULL to use the
/// document's own value. Sets `*accepted` to 1 or 0 and returns OK for any
/// well-formed document; malformed input gives [`DpStatus::Parse`].
///
/// # Safety
/// `text` must be a NUL-terminated string, `eps` NULL or one, and `accepted`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dp_verify_document(
    text: *const c_char,
    eps: *const c_char,
    brute_limit: usize,
    accepted: *mut i32,
) -> DpStatus {
    non_null!(accepted);
    let text = try_str!(text);
    let eps = if eps.is_null() {
        None
    } else {
        match try_str!(eps).parse::<Rat>() {
            Ok(r) => Some(r),
            Err(e) => return fail(e),
        }
    };
    guard(|| {
        let outcome = dualpoly::cli::verify_text(text, eps.as_ref(), brute_limit);
        match outcome.code {
            dualpoly::cli::EXIT_OK => {
                *accepted = 1;
                DpStatus::Ok
            }
            dualpoly::cli::EXIT_REJECTED => {
                *accepted = 0;
                set_error(outcome.stderr.trim_end());
                DpStatus::Ok
            }
            _ => {
                set_error(outcome.stderr.trim_end());
                DpStatus::Parse
            }
        }
    })
}

/// Polynomial from `len >= 2` exact rational strings, the values at Hamming
/// weights `0..len`.
///
/// # Safety
/// `values` must point to `len` NUL-terminated strings and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn dp_poly_new(
    values: *const *const c_char,
    len: usize,
    out: *mut *mut DpPoly,
) -> DpStatus {
    non_null!(values, out);
    *out = ptr::null_mut();
    let mut parsed = Vec::with_capacity(len);
    for i in 0..len {
        match try_str!(*values.add(i)).parse::<Rat>() {
            Ok(r) => parsed.push(r),
            Err(e) => return fail(e),
        }
    }
    guard(|| match SinglePoly::new(parsed) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(DpPoly { inner }));
            DpStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `poly` must be NULL or a handle from [`dp_poly_new`].
#[no_mangle]
pub unsafe extern "C" fn dp_poly_free(poly: *mut DpPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Smallest Fourier level present in the polynomial; fails on the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_poly_pure_high_degree(
    poly: *const DpPoly,
    out: *mut usize,
) -> DpStatus {
    non_null!(poly, out);
    guard(|| match (*poly).inner.pure_high_degree() {
        Ok(d) => {
            *out = d;
            DpStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// `Σ C(n, k) |p(k)|` as a `num/den` string.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_poly_l1_norm(poly: *const DpPoly, out: *mut *mut c_char) -> DpStatus {
    non_null!(poly, out);
    guard(|| write_string(out, (*poly).inner.l1_norm().to_string()))
}

/// Exact eps-approximate degree of a named symmetric function (`or`,
/// `parity`, `constant`, `threshold-<t>`), solved by exact LP for `n <= 16`.
///
/// # Safety
/// `func` and `eps` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_approx_degree(
    func: *const c_char,
    n: usize,
    eps: *const c_char,
    out: *mut usize,
) -> DpStatus {
    non_null!(out);
    let func = try_str!(func);
    let eps = match try_str!(eps).parse::<Rat>() {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if n > lp_degree::LP_DESK_LIMIT {
        set_error(format!(
            "n = {n} exceeds the exact LP limit {}",
            lp_degree::LP_DESK_LIMIT
        ));
        return DpStatus::Domain;
    }
    guard(|| {
        let f = match SymBoolFn::by_name(func, n) {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        match lp_degree::approx_degree(&f, &eps) {
            Ok(d) => {
                *out = d;
                DpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
