//! C ABI over `deloop_core`.
//!
//! Algebras and operators are opaque handles owned by the caller and released
//! with the matching `_free` function. Reports come back as NUL-terminated
//! JSON strings allocated here; release them with `dl_string_free`. Every
//! function returns a `DlStatus`; on failure `dl_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use deloop_core::algebra::{self, json as algebra_json, FinDimAlgebra};
use deloop_core::harness::{exit_code, verify_all};
use deloop_core::hochschild::{cyclic_homology, hochschild_homology_checked};
use deloop_core::jacobi::{
    cocycle, lattice_witness_backward, lattice_witness_forward, operator_from_json, operator_to_json,
    projection_p, shift_power, JacobiOperator, LatticeIndex,
};
use deloop_core::lie::{gl, lie_homology, lie_homology_primitive};
use deloop_core::linalg::rational::format_vector;
use deloop_core::report::Limits;
use deloop_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Finite-dimensional algebra.
pub struct DlAlgebra(Arc<FinDimAlgebra>);

/// Banded operator over an algebra.
pub struct DlOperator(JacobiOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DlStatus {
    match exit_code(e) {
        2 => DlStatus::InvalidInput,
        3 => DlStatus::BudgetExceeded,
        _ => DlStatus::CheckFailed,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T = DlStatus> = std::result::Result<T, Failure>;

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Outcome) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DlStatus::NullPointer
        }
        Ok(Err(Failure::Input(msg))) => {
            set_error(msg);
            DlStatus::InvalidInput
        }
        Err(_) => {
            set_error("internal panic");
            DlStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Input(format!("{what} is not UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Outcome<&'a T> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(DlStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| Failure::Input("output contains NUL".into()))?;
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(c.into_raw());
    Ok(DlStatus::Ok)
}

fn limits(cap: usize, budget: usize) -> Limits {
    Limits { cap, budget, representatives: false }
}

/// Message for the last failure on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Algebra from a label such as `k`, `k[e]/(e^2)`, `M_2(k)`.
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_from_label(label: *const c_char, out: *mut *mut DlAlgebra) -> DlStatus {
    guard(|| {
        let a = algebra::from_label(text(label, "label")?)?;
        put(out, Box::into_raw(Box::new(DlAlgebra(Arc::new(a)))), "out")
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_from_json(json: *const c_char, out: *mut *mut DlAlgebra) -> DlStatus {
    guard(|| {
        let a = algebra_json::from_json(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(DlAlgebra(Arc::new(a)))), "out")
    })
}

/// `M_n(a)`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_matrix(a: *const DlAlgebra, n: usize, out: *mut *mut DlAlgebra) -> DlStatus {
    guard(|| {
        let m = algebra::matrix_algebra(&borrow(a, "algebra")?.0, n)?;
        put(out, Box::into_raw(Box::new(DlAlgebra(Arc::new(m)))), "out")
    })
}

/// Dimension of `a`, or 0 for NULL.
///
/// # Safety
/// `a` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_dim(a: *const DlAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_to_json(a: *const DlAlgebra, out: *mut *mut c_char) -> DlStatus {
    guard(|| put_string(out, algebra_json::to_json(&borrow(a, "algebra")?.0)))
}

/// # Safety
/// `a` must come from this library, or be NULL. Frees it.
#[no_mangle]
pub unsafe extern "C" fn dl_algebra_free(a: *mut DlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// `HH_n(a)` for `n <= cap` as a JSON report.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_hochschild_homology(a: *const DlAlgebra, cap: usize, budget: usize, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let r = hochschild_homology_checked(&borrow(a, "algebra")?.0, &limits(cap, budget))?;
        put_string(out, r.to_json())
    })
}

/// `HC_n(a)` for `n <= cap` as a JSON report.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_cyclic_homology(a: *const DlAlgebra, cap: usize, budget: usize, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let r = cyclic_homology(&borrow(a, "algebra")?.0, &limits(cap, budget))?;
        put_string(out, r.to_json())
    })
}

/// `H_n(gl_n(a))`; with `primitive` nonzero the report carries `prim_dims`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_gl_homology(
    a: *const DlAlgebra,
    n: usize,
    cap: usize,
    budget: usize,
    primitive: bool,
    out: *mut *mut c_char,
) -> DlStatus {
    guard(|| {
        let g = gl(n, &borrow(a, "algebra")?.0)?;
        let r = if primitive { lie_homology_primitive(&g, &limits(cap, budget))? } else { lie_homology(&g, &limits(cap, budget))? };
        put_string(out, r.to_json())
    })
}

fn wrap(op: JacobiOperator) -> *mut DlOperator {
    Box::into_raw(Box::new(DlOperator(op)))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_from_json(json: *const c_char, out: *mut *mut DlOperator) -> DlStatus {
    guard(|| put(out, wrap(operator_from_json(text(json, "json")?)?), "out"))
}

/// `T^k` over `a`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_shift(a: *const DlAlgebra, k: i64, out: *mut *mut DlOperator) -> DlStatus {
    guard(|| put(out, wrap(shift_power(borrow(a, "algebra")?.0.clone(), k)), "out"))
}

/// The projection `P` onto nonnegative indices over `a`.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_projection(a: *const DlAlgebra, out: *mut *mut DlOperator) -> DlStatus {
    guard(|| put(out, wrap(projection_p(borrow(a, "algebra")?.0.clone())), "out"))
}

/// # Safety
/// `op` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_to_json(op: *const DlOperator, out: *mut *mut c_char) -> DlStatus {
    guard(|| put_string(out, operator_to_json(&borrow(op, "operator")?.0)))
}

/// # Safety
/// `x` and `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_mul(x: *const DlOperator, y: *const DlOperator, out: *mut *mut DlOperator) -> DlStatus {
    guard(|| put(out, wrap(borrow(x, "x")?.0.mul(&borrow(y, "y")?.0)?), "out"))
}

/// # Safety
/// `x` and `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_add(x: *const DlOperator, y: *const DlOperator, out: *mut *mut DlOperator) -> DlStatus {
    guard(|| put(out, wrap(borrow(x, "x")?.0.add(&borrow(y, "y")?.0)?), "out"))
}

/// # Safety
/// `op` must come from this library, or be NULL. Frees it.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_free(op: *mut DlOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

pub const DL_IN_IPLUS: u32 = 1;
pub const DL_IN_IMINUS: u32 = 2;
pub const DL_IN_I0: u32 = 4;

/// Ideal membership as a bit set of `DL_IN_*` flags.
///
/// # Safety
/// `op` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_operator_membership(op: *const DlOperator, out: *mut u32) -> DlStatus {
    guard(|| {
        let a = &borrow(op, "operator")?.0;
        let flags = (u32::from(a.in_iplus()) * DL_IN_IPLUS) | (u32::from(a.in_iminus()) * DL_IN_IMINUS) | (u32::from(a.in_i0()) * DL_IN_I0);
        put(out, flags, "out")
    })
}

/// `c(x, y)` in `R/[R,R]` as a JSON array of rational strings.
///
/// # Safety
/// `x` and `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_cocycle(x: *const DlOperator, y: *const DlOperator, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let c = cocycle(&borrow(x, "x")?.0, &borrow(y, "y")?.0)?;
        let s = serde_json::to_string(&format_vector(&c)).expect("strings serialize");
        put_string(out, s)
    })
}

/// Lattice witnesses. `*unbounded` is set when a witness is `Everything`,
/// in which case the matching index is left untouched.
///
/// # Safety
/// `op` must be a live handle and all out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dl_lattice_witnesses(
    op: *const DlOperator,
    n: i64,
    m: i64,
    forward: *mut i64,
    forward_unbounded: *mut bool,
    backward: *mut i64,
    backward_unbounded: *mut bool,
) -> DlStatus {
    guard(|| {
        let a = &borrow(op, "operator")?.0;
        for (w, idx, flag) in [
            (lattice_witness_forward(a, n), forward, forward_unbounded),
            (lattice_witness_backward(a, m), backward, backward_unbounded),
        ] {
            match w {
                LatticeIndex::Index(i) => {
                    put(idx, i, "index")?;
                    put(flag, false, "unbounded")?;
                }
                LatticeIndex::Everything => {
                    put(flag, true, "unbounded")?;
                }
            }
        }
        Ok(DlStatus::Ok)
    })
}

/// Full acceptance run as a JSON report. Returns `CheckFailed` if any entry
/// fails, `BudgetExceeded` if entries were skipped for budget.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_verify(seed: u64, budget: usize, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let r = verify_all(seed, budget);
        put_string(out, r.to_json())?;
        Ok(match r.exit_code() {
            0 => DlStatus::Ok,
            3 => DlStatus::BudgetExceeded,
            _ => DlStatus::CheckFailed,
        })
    })
}
