//! C ABI over `sg-curves`.
//!
//! Point sets and certificates cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns an [`SgStatus`]; on failure a message is available from
//! [`sg_last_error_message`] on the same thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sg_curves::finder::{find_ordinary, verify_certificate, Certificate};
use sg_curves::io::{generate, parse_points, read_certificate, write_certificate, GeneratorSpec};
use sg_curves::param::param_dim;
use sg_curves::{Error, PointSet};

/// Result codes. Values 1 to 5 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    /// No ordinary curve was found, or a certificate failed verification.
    NotFound = 1,
    /// The input violates a precondition, e.g. it lies on a curve of the
    /// requested degree.
    Precondition = 2,
    /// Malformed text input.
    Format = 3,
    BudgetExceeded = 4,
    /// A search that cannot fail did; please report the input.
    Anomaly = 5,
    /// A null pointer or otherwise unusable argument.
    InvalidArgument = 6,
    /// The library panicked.
    Panic = 7,
}

/// Opaque point set.
pub struct SgPointSet(PointSet);

/// Opaque certificate.
pub struct SgCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: SgStatus, msg: &str) -> SgStatus {
    set_last_error(msg);
    status
}

fn from_error(e: &Error) -> SgStatus {
    let status = match e.exit_code() {
        1 => SgStatus::NotFound,
        3 => SgStatus::Format,
        4 => SgStatus::BudgetExceeded,
        5 => SgStatus::Anomaly,
        _ => SgStatus::Precondition,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into [`SgStatus::Panic`].
fn guarded(f: impl FnOnce() -> SgStatus) -> SgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SgStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, SgStatus> {
    if s.is_null() {
        return Err(fail(SgStatus::InvalidArgument, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SgStatus::Format, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a point file (see the command-line documentation for the format).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_point_set_parse(text: *const c_char, out: *mut *mut SgPointSet) -> SgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SgStatus::InvalidArgument, "null output pointer");
        }
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_points(text) {
            Ok(set) => {
                put(out, SgPointSet(set));
                SgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Generates a point set of the named kind with default kind-specific
/// counts.
///
/// # Safety
/// `kind` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_point_set_generate(
    kind: *const c_char,
    n: usize,
    seed: u64,
    bound: i64,
    out: *mut *mut SgPointSet,
) -> SgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SgStatus::InvalidArgument, "null output pointer");
        }
        let kind = match str_arg(kind).map(str::parse) {
            Ok(Ok(k)) => k,
            Ok(Err(e)) => return from_error(&e),
            Err(s) => return s,
        };
        match generate(&GeneratorSpec::new(kind, n, seed, bound)) {
            Ok(set) => {
                put(out, SgPointSet(set));
                SgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `set` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sg_point_set_len(set: *const SgPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `set` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_point_set_free(set: *mut SgPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Finds an ordinary curve of degree 1, 2 or 3.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_find(
    set: *const SgPointSet,
    degree: u32,
    allow_fallback: bool,
    out: *mut *mut SgCertificate,
) -> SgStatus {
    guarded(|| {
        let (Some(set), false) = (set.as_ref(), out.is_null()) else {
            return fail(SgStatus::InvalidArgument, "null argument");
        };
        match find_ordinary(set.0.points(), degree, allow_fallback) {
            Ok(cert) => {
                put(out, SgCertificate(cert));
                SgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Serializes a certificate. Release the string with [`sg_string_free`].
///
/// # Safety
/// `cert` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_to_string(cert: *const SgCertificate, out: *mut *mut c_char) -> SgStatus {
    guarded(|| {
        let (Some(cert), false) = (cert.as_ref(), out.is_null()) else {
            return fail(SgStatus::InvalidArgument, "null argument");
        };
        let text = CString::new(write_certificate(&cert.0)).expect("certificate text has no nul");
        *out = text.into_raw();
        SgStatus::Ok
    })
}

/// Parses a certificate.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_from_string(text: *const c_char, out: *mut *mut SgCertificate) -> SgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SgStatus::InvalidArgument, "null output pointer");
        }
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match read_certificate(text) {
            Ok(cert) => {
                put(out, SgCertificate(cert));
                SgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Checks a certificate against a point set. Returns [`SgStatus::Ok`] when
/// it is valid and [`SgStatus::NotFound`] with a reason otherwise.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn sg_verify(set: *const SgPointSet, cert: *const SgCertificate) -> SgStatus {
    guarded(|| {
        let (Some(set), Some(cert)) = (set.as_ref(), cert.as_ref()) else {
            return fail(SgStatus::InvalidArgument, "null argument");
        };
        match verify_certificate(set.0.points(), &cert.0) {
            Ok(()) => SgStatus::Ok,
            Err(reason) => fail(SgStatus::NotFound, &reason.to_string()),
        }
    })
}

/// Degree of the certificate's curve; 0 for a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_degree(cert: *const SgCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.0.degree())
}

/// Copies up to `cap` incident point indices into `buf` and returns how
/// many there are in total.
///
/// # Safety
/// `cert` must be null or a live handle; `buf` must hold `cap` entries
/// (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_incident(cert: *const SgCertificate, buf: *mut usize, cap: usize) -> usize {
    let Some(cert) = cert.as_ref() else { return 0 };
    let incident = &cert.0.incident;
    if !buf.is_null() {
        let k = incident.len().min(cap);
        ptr::copy_nonoverlapping(incident.as_ptr(), buf, k);
    }
    incident.len()
}

/// # Safety
/// `cert` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_free(cert: *mut SgCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Projective dimension of the degree-`degree` curves through the set
/// (-1 when there are none).
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_param_dim(set: *const SgPointSet, degree: u32, out: *mut i64) -> SgStatus {
    guarded(|| {
        let (Some(set), false) = (set.as_ref(), out.is_null()) else {
            return fail(SgStatus::InvalidArgument, "null argument");
        };
        match param_dim(set.0.points(), degree) {
            Ok(d) => {
                *out = d;
                SgStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
