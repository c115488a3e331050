//! C ABI over `riesz_clifford`.
//!
//! Every entry point returns an [`RccStatus`]. On failure a message is kept
//! per thread and can be read with [`rcc_last_error_message`]. Handles are
//! opaque and must be released with their `_free` function.
//!
//! Complex matrices cross the boundary as interleaved `(re, im)` doubles in
//! row-major order, so a `d x d` matrix takes `2 d^2` slots.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use riesz_clifford::calculus::{
    calculus_integral, calculus_taylor, spectral_radius_bound, CalculusResult, OperatorKernelConfig,
};
use riesz_clifford::clifford::{CMatrix, Multivector};
use riesz_clifford::error::Error;
use riesz_clifford::polyspace::{symmetric_product, HyperPolynomial, OperatorTuple};
use riesz_clifford::quant::{quantize, ClassicalPolynomial};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    Precondition = 5,
    Parse = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Tuple of self-adjoint matrices.
pub struct RccOperatorTuple(OperatorTuple);

/// Polynomial with Clifford coefficients in the `V_alpha` basis.
pub struct RccHyperPolynomial(HyperPolynomial);

/// Matrix-valued multivector `f(T)` with diagnostics.
pub struct RccCalcResult(CalculusResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(RccStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => RccStatus::Parse,
            Error::DimensionMismatch { .. } | Error::InvalidDimension { .. } => RccStatus::DimensionMismatch,
            Error::NotHermitian { .. } => RccStatus::NotHermitian,
            Error::Precondition(_) | Error::NonCommuting { .. } | Error::Singularity => RccStatus::Precondition,
            _ => RccStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(RccStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RccStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RccStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RccStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(RccStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_matrix(m: &CMatrix, out: *mut f64, len: usize) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let need = 2 * m.nrows() * m.ncols();
    if len < need {
        return Err(Fail(RccStatus::BufferTooSmall, format!("buffer holds {len} doubles, need {need}")));
    }
    let out = std::slice::from_raw_parts_mut(out, need);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            let k = 2 * (i * m.ncols() + j);
            out[k] = z.re;
            out[k + 1] = z.im;
        }
    }
    Ok(())
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rcc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn rcc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a tuple from `m` matrices of size `d x d`, stored back to back.
///
/// # Safety
/// `data` must point to `2 m d^2` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_operator_tuple_new(
    m: usize,
    d: usize,
    data: *const f64,
    out: *mut *mut RccOperatorTuple,
) -> RccStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        if m == 0 || d == 0 {
            return Err(Fail(RccStatus::InvalidArgument, "m and d must be positive".into()));
        }
        let values = std::slice::from_raw_parts(data, 2 * m * d * d);
        let mats = values
            .chunks_exact(2 * d * d)
            .map(|c| CMatrix::from_fn(d, d, |i, j| Complex64::new(c[2 * (i * d + j)], c[2 * (i * d + j) + 1])))
            .collect();
        store(out, RccOperatorTuple(OperatorTuple::new(mats)?))
    })
}

/// # Safety
/// `tuple` must come from [`rcc_operator_tuple_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn rcc_operator_tuple_free(tuple: *mut RccOperatorTuple) {
    if !tuple.is_null() {
        drop(Box::from_raw(tuple));
    }
}

/// Writes `m`, `d` and the bound `max_j ||T_j||_2`.
///
/// # Safety
/// Pointers must be valid; any output pointer may be null to skip it.
#[no_mangle]
pub unsafe extern "C" fn rcc_operator_tuple_info(
    tuple: *const RccOperatorTuple,
    m: *mut usize,
    d: *mut usize,
    bound: *mut f64,
) -> RccStatus {
    guard(|| {
        let t = &borrow(tuple, "tuple")?.0;
        if !m.is_null() {
            *m = t.m();
        }
        if !d.is_null() {
            *d = t.d();
        }
        if !bound.is_null() {
            *bound = spectral_radius_bound(t);
        }
        Ok(())
    })
}

/// Weyl quantization of a polynomial such as `"x1^2 x2 - 0.5"`.
///
/// # Safety
/// `out` must hold `len >= 2 d^2` doubles.
#[no_mangle]
pub unsafe extern "C" fn rcc_quantize(
    tuple: *const RccOperatorTuple,
    poly: *const c_char,
    out: *mut f64,
    len: usize,
) -> RccStatus {
    guard(|| {
        let t = &borrow(tuple, "tuple")?.0;
        let p: ClassicalPolynomial = text(poly, "poly")?.parse()?;
        write_matrix(&quantize(&p, t)?, out, len)
    })
}

/// Average over orderings of `T_{i_1} ... T_{i_k}`, with 1-based indices.
///
/// # Safety
/// `indices` must hold `k` entries and `out` must hold `len >= 2 d^2` doubles.
#[no_mangle]
pub unsafe extern "C" fn rcc_symmetric_product(
    tuple: *const RccOperatorTuple,
    indices: *const usize,
    k: usize,
    out: *mut f64,
    len: usize,
) -> RccStatus {
    guard(|| {
        let t = &borrow(tuple, "tuple")?.0;
        let factors: Vec<CMatrix> = if k == 0 {
            vec![t.identity()]
        } else {
            if indices.is_null() {
                return Err(null("indices"));
            }
            std::slice::from_raw_parts(indices, k)
                .iter()
                .map(|&j| {
                    t.get(j).cloned().ok_or(Fail(
                        RccStatus::DimensionMismatch,
                        format!("operator index {j} outside 1..={}", t.m()),
                    ))
                })
                .collect::<Result<_, _>>()?
        };
        write_matrix(&symmetric_product(&factors)?, out, len)
    })
}

/// Parses polynomial text over `n` variables; the monomial `x^alpha` is read
/// as `V_alpha` with a scalar coefficient.
///
/// # Safety
/// `text_ptr` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_hyperpoly_parse(
    text_ptr: *const c_char,
    n: usize,
    out: *mut *mut RccHyperPolynomial,
) -> RccStatus {
    guard(|| {
        let p: ClassicalPolynomial = text(text_ptr, "text")?.parse()?;
        let p = p.with_variables(n)?;
        let mut f = HyperPolynomial::zero(n);
        for (alpha, c) in p.terms() {
            f.add_term(alpha.clone(), Multivector::scalar(n, c))?;
        }
        store(out, RccHyperPolynomial(f))
    })
}

/// # Safety
/// `poly` must come from [`rcc_hyperpoly_parse`] or be null.
#[no_mangle]
pub unsafe extern "C" fn rcc_hyperpoly_free(poly: *mut RccHyperPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// `f(T)` by substituting `V_alpha(T)`.
///
/// # Safety
/// Handles must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_calculus_taylor(
    tuple: *const RccOperatorTuple,
    poly: *const RccHyperPolynomial,
    out: *mut *mut RccCalcResult,
) -> RccStatus {
    guard(|| {
        let t = &borrow(tuple, "tuple")?.0;
        let f = &borrow(poly, "poly")?.0;
        store(out, RccCalcResult(calculus_taylor(f, t)?))
    })
}

/// `f(T)` by integrating the operator Cauchy kernel over a sphere.
/// `radius <= 0` picks twice the spectral bound, `order == 0` picks 32.
///
/// # Safety
/// Handles must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_calculus_integral(
    tuple: *const RccOperatorTuple,
    poly: *const RccHyperPolynomial,
    radius: f64,
    order: usize,
    out: *mut *mut RccCalcResult,
) -> RccStatus {
    guard(|| {
        let t = &borrow(tuple, "tuple")?.0;
        let f = &borrow(poly, "poly")?.0;
        let mut cfg = OperatorKernelConfig::for_tuple(t, f.degree());
        if radius > 0.0 {
            cfg.radius = radius;
        }
        if order > 0 {
            cfg.quad_order = order;
        }
        store(out, RccCalcResult(calculus_integral(f, t, &cfg)?))
    })
}

/// Number of non-zero blades in the result.
///
/// # Safety
/// `result` must be a valid handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_calc_result_blade_count(result: *const RccCalcResult, count: *mut usize) -> RccStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        if count.is_null() {
            return Err(null("count"));
        }
        *count = r.value.len();
        Ok(())
    })
}

/// The `k`-th blade (ascending bitmask order): its bitmask, bit `j-1` set for
/// `e_j`, and its `d x d` matrix coefficient.
///
/// # Safety
/// `bits` must be writable and `out` must hold `len >= 2 d^2` doubles.
#[no_mangle]
pub unsafe extern "C" fn rcc_calc_result_blade(
    result: *const RccCalcResult,
    k: usize,
    bits: *mut u32,
    out: *mut f64,
    len: usize,
) -> RccStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        let (blade, m) = r.value.terms().nth(k).ok_or_else(|| {
            Fail(RccStatus::InvalidArgument, format!("blade {k} out of range, result has {}", r.value.len()))
        })?;
        if bits.is_null() {
            return Err(null("bits"));
        }
        *bits = blade.bits();
        write_matrix(m, out, len)
    })
}

/// Estimated truncation error of the result (zero for the Taylor route).
///
/// # Safety
/// `result` must be a valid handle and `error` writable.
#[no_mangle]
pub unsafe extern "C" fn rcc_calc_result_truncation_error(result: *const RccCalcResult, error: *mut f64) -> RccStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        if error.is_null() {
            return Err(null("error"));
        }
        *error = r.diagnostics.truncation_error;
        Ok(())
    })
}

/// # Safety
/// `result` must come from a calculus call or be null.
#[no_mangle]
pub unsafe extern "C" fn rcc_calc_result_free(result: *mut RccCalcResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
