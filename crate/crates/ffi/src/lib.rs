//! C ABI for `dynir`.
//!
//! Fields and polynomials are opaque heap handles created by `*_new`/`*_parse`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`DynirStatus`]; outputs are written through pointer arguments only on
//! success. Strings returned to the caller are NUL-terminated UTF-8 and must
//! be released with [`dynir_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dynir::cli::{classify, ClassifyOptions};
use dynir::ffield::{build_field, Field};
use dynir::polyring::{parse_poly, Poly};
use dynir::{Error, VerdictKind};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynirStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A polynomial or constant could not be parsed.
    Parse = 3,
    /// The field or an argument violates a precondition.
    InvalidArgument = 4,
    /// The input is outside the domain of the requested procedure.
    Unsupported = 5,
    /// Internal failure (a caught panic).
    Internal = 6,
}

/// Outcome kind of a classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynirVerdictKind {
    /// Every iterate is irreducible.
    Proved = 0,
    /// `iterate` is the least reducible iterate.
    Reducible = 1,
    /// Iterates `1..=iterate` are irreducible; nothing is claimed beyond.
    IrreducibleThrough = 2,
}

/// Verdict summary; the full evidence is available as JSON.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DynirVerdict {
    pub kind: DynirVerdictKind,
    /// Iterate carried by the verdict, 0 when none.
    pub iterate: u32,
}

/// Opaque finite field `F_{p^s}`.
pub struct DynirField {
    inner: Field,
}

/// Opaque polynomial over a [`DynirField`].
pub struct DynirPoly {
    inner: Poly,
}

fn status_of(e: &Error) -> DynirStatus {
    match e {
        Error::Parse(_) => DynirStatus::Parse,
        Error::CompositeCharacteristic(_)
        | Error::CharacteristicTooLarge(_)
        | Error::DegreeZero
        | Error::InvalidArgument(_)
        | Error::ZeroPolynomial
        | Error::ConstantPolynomial => DynirStatus::InvalidArgument,
        _ => DynirStatus::Unsupported,
    }
}

fn guard(f: impl FnOnce() -> DynirStatus) -> DynirStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DynirStatus::Internal)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DynirStatus> {
    if s.is_null() {
        return Err(DynirStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| DynirStatus::InvalidUtf8)
}

fn to_c_string(s: String) -> *mut c_char {
    // interior NULs cannot occur in our renderings; replace defensively
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dynir_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn dynir_status_message(status: DynirStatus) -> *const c_char {
    let msg: &'static str = match status {
        DynirStatus::Ok => "ok\0",
        DynirStatus::NullPointer => "null pointer argument\0",
        DynirStatus::InvalidUtf8 => "string argument is not valid UTF-8\0",
        DynirStatus::Parse => "parse error\0",
        DynirStatus::InvalidArgument => "invalid argument\0",
        DynirStatus::Unsupported => "input outside the domain of the procedure\0",
        DynirStatus::Internal => "internal error\0",
    };
    msg.as_ptr().cast()
}

/// Create `F_{p^s}`; `p` must be a prime below 2^32 and `s >= 1`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dynir_field_new(p: u64, s: u32, out: *mut *mut DynirField) -> DynirStatus {
    guard(|| {
        if out.is_null() {
            return DynirStatus::NullPointer;
        }
        match build_field(p, &[s as usize]) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DynirField { inner }));
                DynirStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a field handle; NULL is ignored.
///
/// # Safety
/// `field` must be NULL or a handle from [`dynir_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynir_field_free(field: *mut DynirField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parse a polynomial such as `"x^3+6x+2"` over `field`.
///
/// # Safety
/// `field` must be a live handle, `src` a NUL-terminated string, `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn dynir_poly_parse(
    field: *const DynirField,
    src: *const c_char,
    out: *mut *mut DynirPoly,
) -> DynirStatus {
    guard(|| {
        if field.is_null() || out.is_null() {
            return DynirStatus::NullPointer;
        }
        let src = match read_str(src) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match parse_poly(&(*field).inner, src) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DynirPoly { inner }));
                DynirStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a polynomial handle; NULL is ignored.
///
/// # Safety
/// `poly` must be NULL or a handle from [`dynir_poly_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynir_poly_free(poly: *mut DynirPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of the polynomial, or -1 for the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dynir_poly_degree(poly: *const DynirPoly) -> i64 {
    if poly.is_null() {
        return -1;
    }
    (*poly).inner.degree().map_or(-1, |d| d as i64)
}

/// Canonical rendering of the polynomial; free with [`dynir_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dynir_poly_to_string(poly: *const DynirPoly, out: *mut *mut c_char) -> DynirStatus {
    guard(|| {
        if poly.is_null() || out.is_null() {
            return DynirStatus::NullPointer;
        }
        *out = to_c_string((*poly).inner.to_string());
        DynirStatus::Ok
    })
}

/// Decide dynamical irreducibility of `poly` (or of the pair `(poly, beta)`
/// when `beta` is a non-NULL constant such as `"3"`).
///
/// `n_max` bounds levels/iterates (10 is typical), `oracle_max` bounds the
/// factorization cross-check, `seed` drives randomized factoring. On success
/// `verdict` receives the summary and, when `json` is non-NULL, `*json`
/// receives a JSON document with the route, verdict and evidence.
///
/// # Safety
/// `poly` must be a live handle; `beta` NULL or NUL-terminated; `verdict`
/// valid for writes; `json` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dynir_classify(
    poly: *const DynirPoly,
    beta: *const c_char,
    n_max: u32,
    oracle_max: u32,
    seed: u64,
    verdict: *mut DynirVerdict,
    json: *mut *mut c_char,
) -> DynirStatus {
    guard(|| {
        if poly.is_null() || verdict.is_null() {
            return DynirStatus::NullPointer;
        }
        if n_max == 0 {
            return DynirStatus::InvalidArgument;
        }
        let f = &(*poly).inner;
        let beta_elem = if beta.is_null() {
            None
        } else {
            let src = match read_str(beta) {
                Ok(s) => s,
                Err(st) => return st,
            };
            match parse_poly(f.field(), src) {
                Ok(b) if b.degree().unwrap_or(0) == 0 => Some(b.coeff(0)),
                Ok(_) => return DynirStatus::Parse,
                Err(e) => return status_of(&e),
            }
        };
        let opts = ClassifyOptions {
            n_max: n_max as usize,
            oracle_max: oracle_max.min(n_max) as usize,
            seed,
        };
        let c = match classify(f, beta_elem.as_ref(), &opts) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        *verdict = DynirVerdict {
            kind: match c.verdict.kind {
                VerdictKind::ProvedDynamicallyIrreducible => DynirVerdictKind::Proved,
                VerdictKind::ReducibleAtIterate => DynirVerdictKind::Reducible,
                VerdictKind::IrreducibleThrough => DynirVerdictKind::IrreducibleThrough,
            },
            iterate: c.verdict.iterate.map_or(0, |n| n as u32),
        };
        if !json.is_null() {
            let doc = serde_json::json!({
                "polynomial": f.to_string(),
                "route": c.route.name(),
                "verdict": c.verdict.to_json(),
                "evidence": c.evidence,
            });
            *json = to_c_string(serde_json::to_string(&doc).expect("serializable"));
        }
        DynirStatus::Ok
    })
}

/// Release a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dynir_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
