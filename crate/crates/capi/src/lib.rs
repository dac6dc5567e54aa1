//! C ABI over the diagonal-multilinear library: opaque operator handles,
//! integer error codes, and JSON-string results (freed with
//! `dml_string_free`). All functions are null-safe.

use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::ptr;

use diagonal_multilinear as dml;
use diagonal_multilinear::Exponent;
use num_complex::Complex64;

/// Error codes returned by every fallible function.
pub const DML_OK: c_int = 0;
pub const DML_ERR_NULL_ARGUMENT: c_int = 1;
pub const DML_ERR_INVALID_UTF8: c_int = 2;
pub const DML_ERR_INVALID_EXPONENT: c_int = 3;
pub const DML_ERR_INVALID_ARGUMENT: c_int = 4;
pub const DML_ERR_DIMENSION_MISMATCH: c_int = 5;
pub const DML_ERR_TOO_LARGE: c_int = 6;

/// Opaque handle to a diagonal multilinear operator.
pub struct DmlOperator {
    inner: dml::DiagonalOperator,
}

fn code_for(e: &dml::DmlError) -> c_int {
    use dml::DmlError::*;
    match e {
        InvalidExponent(_) | ExponentOutOfRange(_) => DML_ERR_INVALID_EXPONENT,
        DimensionMismatch { .. } | ArityMismatch { .. } | FieldMismatch => {
            DML_ERR_DIMENSION_MISMATCH
        }
        TooLarge(_) => DML_ERR_TOO_LARGE,
        InvalidArgument(_) => DML_ERR_INVALID_ARGUMENT,
    }
}

unsafe fn parse_exponent(s: *const c_char) -> Result<Exponent, c_int> {
    if s.is_null() {
        return Err(DML_ERR_NULL_ARGUMENT);
    }
    let s = CStr::from_ptr(s).to_str().map_err(|_| DML_ERR_INVALID_UTF8)?;
    s.parse::<Exponent>().map_err(|_| DML_ERR_INVALID_EXPONENT)
}

fn to_c_string(s: String) -> *mut c_char {
    // interior NULs cannot appear in our JSON output
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn write_json(out: *mut *mut c_char, value: serde_json::Value) -> c_int {
    if out.is_null() {
        return DML_ERR_NULL_ARGUMENT;
    }
    *out = to_c_string(value.to_string());
    DML_OK
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dml_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by any `*_json` function.
#[no_mangle]
pub unsafe extern "C" fn dml_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a diagonal operator with real diagonal `alpha[0..len]` from
/// `lp^len` to `lq^len`; exponents use the text grammar ("2", "3/2", "inf").
#[no_mangle]
pub unsafe extern "C" fn dml_operator_new(
    arity: usize,
    alpha: *const c_double,
    len: usize,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut DmlOperator,
) -> c_int {
    if alpha.is_null() || out.is_null() {
        return DML_ERR_NULL_ARGUMENT;
    }
    let (p, q) = match (parse_exponent(p), parse_exponent(q)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    let alpha: Vec<Complex64> = std::slice::from_raw_parts(alpha, len)
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    match dml::DiagonalOperator::new(arity, alpha, p, q) {
        Ok(op) => {
            *out = Box::into_raw(Box::new(DmlOperator { inner: op }));
            DML_OK
        }
        Err(e) => code_for(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn dml_operator_free(op: *mut DmlOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Exact continuous norm of the operator.
#[no_mangle]
pub unsafe extern "C" fn dml_operator_norm(op: *const DmlOperator, out: *mut c_double) -> c_int {
    if op.is_null() || out.is_null() {
        return DML_ERR_NULL_ARGUMENT;
    }
    match dml::diagonal_norm_exact(&(*op).inner) {
        Ok(cert) => {
            *out = cert.value;
            DML_OK
        }
        Err(e) => code_for(&e),
    }
}

/// Full norm certificate for one ideal ('L', 'N', or 'I') as a JSON string.
#[no_mangle]
pub unsafe extern "C" fn dml_operator_norm_json(
    op: *const DmlOperator,
    ideal: c_char,
    out: *mut *mut c_char,
) -> c_int {
    if op.is_null() {
        return DML_ERR_NULL_ARGUMENT;
    }
    let op = &(*op).inner;
    let cert = match ideal as u8 {
        b'L' | b'l' => dml::diagonal_norm_exact(op),
        b'N' | b'n' => dml::nuclear_integral_exact(op).map(|r| r.nuclear),
        b'I' | b'i' => dml::nuclear_integral_exact(op).map(|r| r.integral),
        _ => return DML_ERR_INVALID_ARGUMENT,
    };
    match cert {
        Ok(cert) => write_json(out, serde_json::to_value(&cert).unwrap()),
        Err(e) => code_for(&e),
    }
}

/// Classification of (p, q, n) as a JSON string (spaces, strictness, chain).
#[no_mangle]
pub unsafe extern "C" fn dml_classify_json(
    p: *const c_char,
    q: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> c_int {
    let (p, q) = match (parse_exponent(p), parse_exponent(q)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    match dml::classify_operators(p, q, n) {
        Ok(c) => write_json(
            out,
            serde_json::json!({
                "classification": c,
                "chain": dml::render_chain(&c),
            }),
        ),
        Err(e) => code_for(&e),
    }
}

/// Coincidence-table rows for (p, q) as a JSON string.
#[no_mangle]
pub unsafe extern "C" fn dml_table_json(
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    let (p, q) = match (parse_exponent(p), parse_exponent(q)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    match dml::coincidence_tables(p, q) {
        Ok((t1, t2)) => write_json(
            out,
            serde_json::json!({
                "table1": t1.to_string(),
                "table2": t2.to_string(),
            }),
        ),
        Err(e) => code_for(&e),
    }
}
