//! C interface to `latticecircle`.
//!
//! Every function returns an [`LcStatus`]; on failure a message is available
//! from [`lc_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`lc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latticecircle::classify::{Classification, Source};
use latticecircle::{count_points, special, Circle, Rational};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Internal = 4,
}

/// Result of a classification run. Opaque to C.
pub struct LcClassification {
    rows: Vec<Classification>,
}

/// One classified `n`. `r2 = r2_num / r2_den`, `R_n = surd_s * sqrt(surd_d) / surd_q`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LcRow {
    pub n: u64,
    /// 1 for MC, 0 for non-MC.
    pub is_mc: u8,
    pub r2_num: u64,
    pub r2_den: u64,
    pub surd_s: u64,
    pub surd_d: u64,
    pub surd_q: u64,
    /// MC number the radius is inherited from; equals `n` for MC rows.
    pub source: u64,
    /// 1 when `impacting_index` is set (MC rows).
    pub has_impacting_index: u8,
    /// 1 when the index is exact, 0 when it is only a lower bound.
    pub impacting_index_exact: u8,
    pub impacting_index: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LcStatus, msg: impl Into<String>) -> LcStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> LcStatus) -> LcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(LcStatus::Internal, "panic inside latticecircle"),
    }
}

fn rational(num: i64, den: i64) -> Result<Rational, LcStatus> {
    Rational::new(num, den).map_err(|e| fail(LcStatus::InvalidArgument, e.to_string()))
}

fn to_u64<T: ToPrimitive + std::fmt::Display>(v: &T) -> Result<u64, LcStatus> {
    v.to_u64()
        .ok_or_else(|| fail(LcStatus::OutOfRange, format!("{v} does not fit in 64 bits")))
}

fn row_of(c: &Classification) -> Result<LcRow, LcStatus> {
    let idx = c.impacting_index;
    Ok(LcRow {
        n: c.n,
        is_mc: c.is_mc() as u8,
        r2_num: to_u64(c.r2.numer())?,
        r2_den: to_u64(c.r2.denom())?,
        surd_s: to_u64(&c.surd.s)?,
        surd_d: to_u64(&c.surd.d)?,
        surd_q: to_u64(&c.surd.q)?,
        source: match c.source {
            Source::Own => c.n,
            Source::Inherited(k) => k,
        },
        has_impacting_index: idx.is_some() as u8,
        impacting_index_exact: idx.and_then(|i| i.exact()).is_some() as u8,
        impacting_index: idx.map(|i| i.lower_bound()).unwrap_or(0),
    })
}

/// Message for the last failed call on this thread, or NULL. Free with
/// [`lc_string_free`].
#[no_mangle]
pub extern "C" fn lc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Classifies every `0 <= n <= max`.
///
/// # Safety
/// `out` must be a valid pointer. On success `*out` holds a handle to release
/// with [`lc_classification_free`].
#[no_mangle]
pub unsafe extern "C" fn lc_classify(max: u64, out: *mut *mut LcClassification) -> LcStatus {
    guard(|| {
        if out.is_null() {
            return fail(LcStatus::NullPointer, "out is NULL");
        }
        match latticecircle::classify(max) {
            Ok(rows) => {
                *out = Box::into_raw(Box::new(LcClassification { rows }));
                LcStatus::Ok
            }
            Err(e) => fail(LcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Number of rows, `max + 1`. Returns 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_classification_len(h: *const LcClassification) -> usize {
    h.as_ref().map_or(0, |h| h.rows.len())
}

/// Copies row `index` into `*out`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_classification_get(
    h: *const LcClassification,
    index: usize,
    out: *mut LcRow,
) -> LcStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return fail(LcStatus::NullPointer, "handle or out is NULL");
        };
        let Some(c) = h.rows.get(index) else {
            return fail(
                LcStatus::OutOfRange,
                format!("index {index} out of range 0..{}", h.rows.len()),
            );
        };
        match row_of(c) {
            Ok(row) => {
                *out = row;
                LcStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// `R_n` of row `index` as text such as `5√34/8`. Free with [`lc_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_classification_radius_string(
    h: *const LcClassification,
    index: usize,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let (Some(h), false) = (h.as_ref(), out.is_null()) else {
            return fail(LcStatus::NullPointer, "handle or out is NULL");
        };
        let Some(c) = h.rows.get(index) else {
            return fail(
                LcStatus::OutOfRange,
                format!("index {index} out of range 0..{}", h.rows.len()),
            );
        };
        *out = CString::new(c.surd.to_string()).expect("no nul").into_raw();
        LcStatus::Ok
    })
}

/// Releases a classification handle. NULL is ignored.
///
/// # Safety
/// `h` must be NULL or a handle from [`lc_classify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lc_classification_free(h: *mut LcClassification) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Lattice points strictly inside and exactly on the circle with center
/// `(cx_num/cx_den, cy_num/cy_den)` and squared radius `r2_num/r2_den`.
///
/// # Safety
/// `interior` and `boundary` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lc_count_points(
    cx_num: i64,
    cx_den: i64,
    cy_num: i64,
    cy_den: i64,
    r2_num: i64,
    r2_den: i64,
    interior: *mut u64,
    boundary: *mut u64,
) -> LcStatus {
    guard(|| {
        if interior.is_null() || boundary.is_null() {
            return fail(LcStatus::NullPointer, "output pointer is NULL");
        }
        let parts = (|| {
            Ok::<_, LcStatus>((
                rational(cx_num, cx_den)?,
                rational(cy_num, cy_den)?,
                rational(r2_num, r2_den)?,
            ))
        })();
        let (cx, cy, r2) = match parts {
            Ok(p) => p,
            Err(s) => return s,
        };
        let circle = match Circle::new(cx, cy, r2) {
            Ok(c) => c,
            Err(e) => return fail(LcStatus::InvalidArgument, e.to_string()),
        };
        let pc = count_points(&circle);
        *interior = pc.interior;
        *boundary = pc.boundary;
        LcStatus::Ok
    })
}

fn special_count(k: u64, out: *mut u64, f: fn(u64) -> latticecircle::Result<u64>) -> LcStatus {
    guard(|| {
        if out.is_null() {
            return fail(LcStatus::NullPointer, "out is NULL");
        }
        match f(k) {
            // SAFETY: checked non-null; validity is the caller's contract.
            Ok(v) => {
                unsafe { *out = v };
                LcStatus::Ok
            }
            Err(e) => fail(LcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Points inside the circle centered at `(1/2, 1/2)` with `r^2 = k^2 + k + 1/2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_special_f(k: u64, out: *mut u64) -> LcStatus {
    special_count(k, out, special::f_closed)
}

/// Points inside the circle centered at the origin with `r^2 = k^2 + 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_special_g(k: u64, out: *mut u64) -> LcStatus {
    special_count(k, out, special::g_count)
}
