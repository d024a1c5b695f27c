//! C ABI over `agc-core`.
//!
//! Every fallible call returns an `int32_t` status: [`AGC_OK`] on success, one
//! of the library error codes (10 and up, identical to the CLI exit codes), or
//! one of the ABI-level codes 1..=4. After a failure, [`agc_last_error_message`]
//! describes it. Codes are handed out as opaque [`AgcCode`] pointers that must
//! be released with [`agc_code_free`].

use agc_core::analysis::{low_weight_dual_search, min_distance_exhaustive};
use agc_core::code::{build_affine_grassmann, build_reed_muller, theoretical_params, Code};
use agc_core::dual::build_dual_code;
use agc_core::export::{generator_text, write_alist};
use agc_core::AgcError;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

pub const AGC_OK: i32 = 0;
pub const AGC_ERR_NULL_POINTER: i32 = 1;
pub const AGC_ERR_INVALID_UTF8: i32 = 2;
pub const AGC_ERR_BUFFER_TOO_SMALL: i32 = 3;
pub const AGC_ERR_PANIC: i32 = 4;
pub const AGC_ERR_NOT_PRIME_POWER: i32 = 10;
pub const AGC_ERR_UNSUPPORTED: i32 = 11;
pub const AGC_ERR_DIVISION_BY_ZERO: i32 = 12;
pub const AGC_ERR_INVALID_ELEMENT: i32 = 13;
pub const AGC_ERR_DEGREE_TOO_LARGE: i32 = 14;
pub const AGC_ERR_DEPENDENT_FORMS: i32 = 15;
pub const AGC_ERR_SIZE_OUT_OF_RANGE: i32 = 16;
pub const AGC_ERR_DIMENSION_MISMATCH: i32 = 17;
pub const AGC_ERR_TOO_LARGE: i32 = 18;
pub const AGC_ERR_ORDER_OUT_OF_RANGE: i32 = 19;
pub const AGC_ERR_ORTHOGONALITY_VIOLATION: i32 = 20;
pub const AGC_ERR_INVALID_WITNESS_PARAMS: i32 = 21;
pub const AGC_ERR_SINGULAR_MATRIX: i32 = 22;
pub const AGC_ERR_NOT_SQUARE: i32 = 23;
pub const AGC_ERR_W_MAX_UNSUPPORTED: i32 = 24;
pub const AGC_ERR_WORD_NOT_IN_CODE: i32 = 25;
pub const AGC_ERR_RANK_TOO_LOW: i32 = 26;
pub const AGC_ERR_INVALID_PARAMS: i32 = 27;
pub const AGC_ERR_IO: i32 = 28;
pub const AGC_ERR_VERIFICATION_FAILED: i32 = 29;

/// Opaque handle to a linear code.
pub struct AgcCode {
    code: Code,
}

/// Closed-form parameters; `min_weight_count` is meaningful only when
/// `has_min_weight_count` is nonzero.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AgcParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub min_weight_count: u64,
    pub has_min_weight_count: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(i32, String);

impl From<AgcError> for Failure {
    fn from(e: AgcError) -> Self {
        Failure(e.code(), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AGC_ERR_NULL_POINTER, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AGC_OK,
        Ok(Err(Failure(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            AGC_ERR_PANIC
        }
    }
}

unsafe fn code_ref<'a>(ptr: *const AgcCode) -> Result<&'a Code, Failure> {
    ptr.as_ref().map(|h| &h.code).ok_or_else(|| null("code"))
}

unsafe fn path_arg<'a>(ptr: *const c_char) -> Result<&'a Path, Failure> {
    if ptr.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map(Path::new)
        .map_err(|_| Failure(AGC_ERR_INVALID_UTF8, "path is not valid UTF-8".into()))
}

unsafe fn emit(out: *mut *mut AgcCode, code: Code) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(AgcCode { code }));
    Ok(())
}

fn narrow(v: u128, what: &str) -> Result<u64, Failure> {
    u64::try_from(v).map_err(|_| AgcError::TooLarge(format!("{what} does not fit in 64 bits")).into())
}

/// Message for the most recent failure on this thread (empty if none).
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn agc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds AGC(ell, m; r) over F_q.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn agc_build_affine_grassmann(ell: u32, m: u32, r: u32, q: u32, out: *mut *mut AgcCode) -> i32 {
    guard(|| emit(out, build_affine_grassmann(ell as usize, m as usize, r as usize, q)?))
}

/// Builds the Reed-Muller code RM(r, delta) over F_q.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn agc_build_reed_muller(r: u32, delta: u32, q: u32, out: *mut *mut AgcCode) -> i32 {
    guard(|| emit(out, build_reed_muller(r as usize, delta as usize, q)?))
}

/// Builds the explicit dual of an affine Grassmann code.
///
/// # Safety
/// `code` must come from this library and not be freed; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agc_build_dual(code: *const AgcCode, out: *mut *mut AgcCode) -> i32 {
    guard(|| emit(out, build_dual_code(code_ref(code)?)?))
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `code` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn agc_code_free(code: *mut AgcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agc_code_length(code: *const AgcCode) -> usize {
    code.as_ref().map_or(0, |h| h.code.len())
}

/// Number of generator rows, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agc_code_dimension(code: *const AgcCode) -> usize {
    code.as_ref().map_or(0, |h| h.code.dimension())
}

/// Field size q, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn agc_code_field_size(code: *const AgcCode) -> u32 {
    code.as_ref().map_or(0, |h| h.code.field().q())
}

/// Copies generator row `row` (element codes, one byte each) into `buf`.
///
/// # Safety
/// `buf` must point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn agc_code_row(code: *const AgcCode, row: usize, buf: *mut u8, buf_len: usize) -> i32 {
    guard(|| {
        let code = code_ref(code)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let src = code
            .generator()
            .get(row)
            .ok_or_else(|| Failure::from(AgcError::DimensionMismatch(format!("row {row} of {}", code.dimension()))))?;
        if buf_len < src.len() {
            return Err(Failure(AGC_ERR_BUFFER_TOO_SMALL, format!("need {} bytes, got {buf_len}", src.len())));
        }
        std::ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(())
    })
}

/// Minimum distance and number of minimum-weight codewords by full enumeration.
///
/// # Safety
/// `d` and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agc_min_distance(code: *const AgcCode, d: *mut u64, count: *mut u64) -> i32 {
    guard(|| {
        let rep = min_distance_exhaustive(code_ref(code)?)?;
        if d.is_null() || count.is_null() {
            return Err(null("output"));
        }
        *d = rep.d as u64;
        *count = rep.count;
        Ok(())
    })
}

/// Number of dual codewords of each weight `0..=w_max` (`w_max <= 4`),
/// written to `counts[0..=w_max]`.
///
/// # Safety
/// `counts` must point to at least `w_max + 1` writable values.
#[no_mangle]
pub unsafe extern "C" fn agc_dual_low_weight_counts(code: *const AgcCode, w_max: u32, counts: *mut u64) -> i32 {
    guard(|| {
        let spec = low_weight_dual_search(code_ref(code)?, w_max as usize)?;
        if counts.is_null() {
            return Err(null("counts"));
        }
        for (w, &c) in spec.counts.iter().enumerate().take(w_max as usize + 1) {
            *counts.add(w) = c;
        }
        Ok(())
    })
}

/// Closed-form n, k, d (and the minimum-weight count at r = ell).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn agc_theoretical_params(ell: u32, m: u32, r: u32, q: u32, out: *mut AgcParams) -> i32 {
    guard(|| {
        let p = theoretical_params(ell as usize, m as usize, r as usize, q)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = AgcParams {
            n: narrow(p.n, "n")?,
            k: p.k as u64,
            d: narrow(p.d, "d")?,
            min_weight_count: p.min_weight_count.map(|c| narrow(c, "count")).transpose()?.unwrap_or(0),
            has_min_weight_count: p.min_weight_count.is_some() as u8,
        };
        Ok(())
    })
}

/// Writes the generator matrix as text ("q n k" header, then one row per line).
///
/// # Safety
/// `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn agc_write_generator(code: *const AgcCode, path: *const c_char) -> i32 {
    guard(|| {
        let code = code_ref(code)?;
        std::fs::write(path_arg(path)?, generator_text(code)).map_err(AgcError::from)?;
        Ok(())
    })
}

/// Writes `<stem>.alist` (and `<stem>.qval` when q > 2) for the generator matrix.
///
/// # Safety
/// `stem` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn agc_write_alist(code: *const AgcCode, stem: *const c_char) -> i32 {
    guard(|| {
        write_alist(code_ref(code)?, path_arg(stem)?)?;
        Ok(())
    })
}
