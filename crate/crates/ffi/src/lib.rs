//! C ABI over `totient-verify`.
//!
//! Big integers cross the boundary as NUL-terminated decimal strings.
//! Strings returned to the caller are owned by it and must be released with
//! [`tv_string_free`]; handles have matching `*_free` functions. The header
//! `include/totient_verify.h` is generated from this crate by cbindgen.

mod error;
mod handles;

pub use error::{tv_last_error, TvStatus};
pub use handles::*;

use std::ffi::{c_char, CStr, CString};

use totient_verify::arith::{euler_phi, factorize};
use totient_verify::cyclotomic::cyclotomic_value;
use totient_verify::theorems::order_check;
use totient_verify::Natural;

use error::{guard, FfiError};

pub(crate) unsafe fn read_natural(ptr: *const c_char) -> Result<Natural, FfiError> {
    if ptr.is_null() {
        return Err(FfiError::new(TvStatus::NullPointer, "null string argument"));
    }
    let text = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| FfiError::new(TvStatus::InvalidUtf8, "argument is not UTF-8"))?;
    totient_verify::decimal::parse(text).map_err(|e| FfiError::new(TvStatus::InvalidNumber, e))
}

pub(crate) fn into_c_string(text: String) -> *mut c_char {
    CString::new(text)
        .expect("decimal and JSON output has no interior NUL")
        .into_raw()
}

pub(crate) unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), FfiError> {
    if out.is_null() {
        return Err(FfiError::new(TvStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Euler's totient of the decimal number `n`, written to `*out` as a decimal
/// string. Returns `Incomplete` when `n` does not factor within `budget`.
///
/// # Safety
/// `n` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_euler_phi(
    n: *const c_char,
    budget: u64,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let n = read_natural(n)?;
        let phi = euler_phi(&factorize(&n, budget)?)?;
        write_out(out, into_c_string(phi.to_string()))
    })
}

/// `Φ_k(a, b)` for `a > b >= 1`, as a decimal string.
///
/// # Safety
/// `a` and `b` must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_cyclotomic_value(
    k: u64,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> TvStatus {
    guard(|| {
        let value = cyclotomic_value(k, &read_natural(a)?, &read_natural(b)?)?;
        write_out(out, into_c_string(value.to_string()))
    })
}

/// Whether `y/x` has order exactly `2n` modulo `x^n + y^n`. Needs coprime
/// `1 <= x < y`.
///
/// # Safety
/// `x` and `y` must be valid C strings and `holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_order_check(
    x: *const c_char,
    y: *const c_char,
    n: u64,
    holds: *mut bool,
) -> TvStatus {
    guard(|| {
        let cert = order_check(&read_natural(x)?, &read_natural(y)?, n)?;
        write_out(holds, cert.holds)
    })
}
