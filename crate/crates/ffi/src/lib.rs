//! C interface to `arrangement-core`.
//!
//! Arrangements live behind an opaque [`ArrArrangement`] handle created from
//! the JSON file format. Every call returns an [`ArrStatus`]; on failure the
//! message is kept per thread and read with [`arr_last_error`]. Strings
//! returned by the library are freed with [`arr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arrangement_core::arrangement::{char_poly, invariants, Arrangement};
use arrangement_core::cli::io::{parse_arrangement, to_pretty, AnyArrangement, ElemJson};
use arrangement_core::cli::report::classification_json;
use arrangement_core::extension::classify_extensions;
use arrangement_core::finitefield::{count_complement, reduce_mod_p};
use arrangement_core::Error;

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotEssential = 4,
    BadPrime = 5,
    BudgetExceeded = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// An arrangement over `Q` or `F_p`.
pub struct ArrArrangement {
    inner: AnyArrangement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> ArrStatus {
    match e {
        Error::NonEssential { .. } => ArrStatus::NotEssential,
        Error::BadPrime { .. } => ArrStatus::BadPrime,
        Error::BudgetExceeded { .. } => ArrStatus::BudgetExceeded,
        _ => ArrStatus::ParseError,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), ArrStatus>) -> ArrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ArrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal error");
            ArrStatus::Internal
        }
    }
}

fn fail(e: Error) -> ArrStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> ArrStatus {
    set_error(format!("{what} is null"));
    ArrStatus::NullPointer
}

unsafe fn handle<'a>(h: *const ArrArrangement) -> Result<&'a AnyArrangement, ArrStatus> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| null("arrangement"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, ArrStatus> {
    p.as_mut().ok_or_else(|| null("output pointer"))
}

fn string_out(s: String, out: &mut *mut c_char) -> Result<(), ArrStatus> {
    *out = CString::new(s).map_err(|_| ArrStatus::Internal)?.into_raw();
    Ok(())
}

/// Parses an arrangement from JSON text. On success `*out` owns a handle
/// to release with [`arr_arrangement_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_from_json(json: *const c_char, out: *mut *mut ArrArrangement) -> ArrStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("json is not valid UTF-8");
            ArrStatus::InvalidUtf8
        })?;
        let inner = parse_arrangement(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(ArrArrangement { inner }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `h` must come from [`arr_arrangement_from_json`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_free(h: *mut ArrArrangement) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Ambient dimension.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_dim(h: *const ArrArrangement, out: *mut usize) -> ArrStatus {
    guard(|| {
        *out_ref(out)? = handle(h)?.dim();
        Ok(())
    })
}

/// Number of hyperplanes.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_len(h: *const ArrArrangement, out: *mut usize) -> ArrStatus {
    guard(|| {
        *out_ref(out)? = match handle(h)? {
            AnyArrangement::Rational(a) => a.len(),
            AnyArrangement::Prime(a) => a.len(),
        };
        Ok(())
    })
}

/// Coefficients of the characteristic polynomial, constant term first.
/// `*len` receives the number of coefficients (`dim + 1`); if `cap` is
/// smaller nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `coeffs` must hold `cap` values (it may be null when `cap` is 0) and
/// `len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_char_poly(
    h: *const ArrArrangement,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> ArrStatus {
    guard(|| {
        let a = handle(h)?;
        let len = out_ref(len)?;
        let poly = match a {
            AnyArrangement::Rational(a) => char_poly(a),
            AnyArrangement::Prime(a) => char_poly(a),
        };
        let mut c = poly.coeffs().to_vec();
        c.resize(a.dim() + 1, 0);
        *len = c.len();
        if cap < c.len() {
            set_error(format!("buffer holds {cap} coefficients, need {}", c.len()));
            return Err(ArrStatus::BufferTooSmall);
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        ptr::copy_nonoverlapping(c.as_ptr(), coeffs, c.len());
        Ok(())
    })
}

/// Number of regions of the complement.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_regions(h: *const ArrArrangement, out: *mut u64) -> ArrStatus {
    guard(|| {
        *out_ref(out)? = match handle(h)? {
            AnyArrangement::Rational(a) => invariants(a).regions,
            AnyArrangement::Prime(a) => invariants(a).regions,
        };
        Ok(())
    })
}

/// Points of `F_p^d` off every hyperplane. Rational arrangements are
/// reduced mod `p`; for arrangements over `F_p`, pass `p = 0` or the
/// field's prime.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_ff_count(
    h: *const ArrArrangement,
    p: u64,
    budget: u64,
    out: *mut u64,
) -> ArrStatus {
    guard(|| {
        let out = out_ref(out)?;
        let n = match handle(h)? {
            AnyArrangement::Rational(a) => reduce_mod_p(a, p).and_then(|ap| count_complement(&ap, budget)),
            AnyArrangement::Prime(ap) if p == 0 || p == ap.field().modulus() => count_complement(ap, budget),
            AnyArrangement::Prime(ap) => Err(Error::BadPrime {
                p,
                reason: format!("the arrangement is over F_{}", ap.field().modulus()),
            }),
        }
        .map_err(fail)?;
        *out = u64::try_from(n).map_err(|_| ArrStatus::Internal)?;
        Ok(())
    })
}

fn classify<F: ElemJson>(a: &Arrangement<F>) -> Result<String, Error> {
    Ok(to_pretty(&classification_json(&classify_extensions(a)?, 0)))
}

/// The extension classification report as JSON, the same document the
/// `classify` command writes. Free the string with [`arr_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arr_arrangement_classify_json(h: *const ArrArrangement, out: *mut *mut c_char) -> ArrStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let text = match handle(h)? {
            AnyArrangement::Rational(a) => classify(a),
            AnyArrangement::Prime(a) => classify(a),
        }
        .map_err(fail)?;
        string_out(text, out)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn arr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn arr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
