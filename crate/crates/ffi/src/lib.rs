//! C ABI over the `qhs` library.
//!
//! Every fallible call returns a [`QhsStatus`]; on failure a message is
//! available from [`qhs_last_error`] on the same thread. Strings handed out
//! through `out` parameters are owned by the caller and must be released
//! with [`qhs_string_free`]. Handles are opaque and released with their
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qhs::cyclotomic::CycElem;
use qhs::exact::Rational;
use qhs::harmonic::{zq_dp, IndexVector, QSpec, RootSums, DEFAULT_BRUTE_CAP};
use qhs::verify::{run_suite_with_jobs, Grid, Suite};
use qhs::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad parameter, malformed string or invalid index vector.
    InvalidArgument = 2,
    /// Brute-force enumeration would exceed its cap.
    TooLarge = 3,
    /// The value exists but is not rational.
    NotRational = 4,
    /// Division by zero or another arithmetic domain error.
    Arithmetic = 5,
    /// A verification run found an unexpected mismatch.
    Mismatch = 6,
    /// Internal panic caught at the boundary.
    Panic = 7,
}

/// Precomputed root-of-unity data for one `n`.
pub struct QhsRootSums {
    inner: RootSums,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl ToString) {
    let msg = CString::new(msg.to_string().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> QhsStatus {
    match e {
        Error::TooLarge { .. } => QhsStatus::TooLarge,
        Error::NotRational(_) => QhsStatus::NotRational,
        Error::ZeroDivisor | Error::NotInvertible | Error::SeriesNotInvertible | Error::Pole { .. } | Error::GcdUndefined => {
            QhsStatus::Arithmetic
        }
        _ => QhsStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics into [`QhsStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (QhsStatus, String)>) -> QhsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QhsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QhsStatus::Panic
        }
    }
}

fn lift<T>(r: qhs::Result<T>) -> Result<T, (QhsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (QhsStatus, String) {
    (QhsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QhsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QhsStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn read_indices(p: *const u32, len: usize) -> Result<IndexVector, (QhsStatus, String)> {
    let slice = if len == 0 {
        &[][..]
    } else if p.is_null() {
        return Err(null("indices"));
    } else {
        std::slice::from_raw_parts(p, len)
    };
    lift(IndexVector::new(slice.to_vec()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (QhsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn qhs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn qhs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn qhs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a handle for sums at a primitive `n`-th root of unity (`n >= 2`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_new(n: u32, out: *mut *mut QhsRootSums) -> QhsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lift(RootSums::new(n))?;
        *out = Box::into_raw(Box::new(QhsRootSums { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from [`qhs_root_sums_new`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_free(h: *mut QhsRootSums) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The order `n` of the handle, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_order(h: *const QhsRootSums) -> u32 {
    h.as_ref().map_or(0, |h| h.inner.n())
}

/// Evaluates the nested sum for `indices`. Writes JSON
/// `{"n":..,"coeffs":["p/q",..]}` in the power basis of Q(zeta_n).
///
/// # Safety
/// `h` must be a live handle, `indices` must point to `len` values, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_compute(
    h: *const QhsRootSums,
    indices: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let s = read_indices(indices, len)?;
        let value = h.inner.dp(&s);
        write_string(out, element_json(&value))
    })
}

/// Like [`qhs_root_sums_compute`] but writes the value as `"p/q"`; fails with
/// [`QhsStatus::NotRational`] when it lies outside Q.
///
/// # Safety
/// Same as [`qhs_root_sums_compute`].
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_compute_rational(
    h: *const QhsRootSums,
    indices: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let s = read_indices(indices, len)?;
        let r = lift(h.inner.dp(&s).rational_part())?;
        write_string(out, r.to_string())
    })
}

/// Brute-force enumeration of the same sum, capped at `cap` tuples
/// (0 selects the default cap). Writes the same JSON as the DP path.
///
/// # Safety
/// Same as [`qhs_root_sums_compute`].
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_compute_brute(
    h: *const QhsRootSums,
    indices: *const u32,
    len: usize,
    cap: u64,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let s = read_indices(indices, len)?;
        let cap = if cap == 0 { DEFAULT_BRUTE_CAP } else { cap };
        let value = lift(h.inner.brute(&s, cap))?;
        write_string(out, element_json(&value))
    })
}

/// Single-index sum with exponent `s >= 1`, written as `"p/q"`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_single(h: *const QhsRootSums, s: u32, out: *mut *mut c_char) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let r = lift(h.inner.single(s))?;
        write_string(out, r.to_string())
    })
}

/// Cyclic sum of the all-ones pattern with one slot raised to `a`, depth `m`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_cyclic_ones(
    h: *const QhsRootSums,
    a: u32,
    m: u32,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let r = lift(h.inner.cyclic_sum_ones(a, m as usize))?;
        write_string(out, r.to_string())
    })
}

/// Cyclic sum of the all-twos pattern with one slot raised to `a`, depth `m`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_root_sums_cyclic_twos(
    h: *const QhsRootSums,
    a: u32,
    m: u32,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        let r = lift(h.inner.cyclic_sum_twos(a, m as usize))?;
        write_string(out, r.to_string())
    })
}

/// Nested sum at a rational `q` (given as `"p/q"`) over `1..upper-1`,
/// written as `"p/q"`.
///
/// # Safety
/// `q` must be a nul-terminated string, `indices` must point to `len`
/// values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_rational_q_sum(
    q: *const c_char,
    upper: u32,
    indices: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> QhsStatus {
    guard(|| {
        let q = lift(read_str(q, "q")?.parse::<Rational>())?;
        let s = read_indices(indices, len)?;
        let spec = lift(QSpec::rational(q, upper))?;
        let value = lift(zq_dp(&spec, &s).and_then(|v| v.as_rational()))?;
        write_string(out, value.to_string())
    })
}

/// Runs a verification suite and writes its JSON report. Returns
/// [`QhsStatus::Mismatch`] (with the report still written) when any case
/// fails unexpectedly. `jobs == 0` uses one thread.
///
/// # Safety
/// `suite` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qhs_verify(
    suite: *const c_char,
    max_n: u32,
    max_m: u32,
    max_a: u32,
    max_s: u32,
    jobs: u32,
    out: *mut *mut c_char,
) -> QhsStatus {
    let mut mismatch = false;
    let status = guard(|| {
        let suite = lift(read_str(suite, "suite")?.parse::<Suite>())?;
        if out.is_null() {
            return Err(null("out"));
        }
        let grid = Grid { max_n, max_m, max_a, max_s };
        let report = lift(run_suite_with_jobs(suite, &grid, jobs.max(1) as usize))?;
        mismatch = !report.all_expected();
        write_string(out, report.to_json())
    });
    if status == QhsStatus::Ok && mismatch {
        set_error("unexpected mismatch in verification report");
        return QhsStatus::Mismatch;
    }
    status
}

/// `{"n":..,"coeffs":["p/q",..]}`, matching the core crate's serialization.
fn element_json(z: &CycElem) -> String {
    let coeffs: Vec<String> = z.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
    format!("{{\"n\":{},\"coeffs\":[{}]}}", z.field().n(), coeffs.join(","))
}
