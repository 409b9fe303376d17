//! C ABI for the permutation-class library: opaque class handles, status
//! codes, and string results the caller frees. The header is generated into
//! `include/permgrid.h` at build time.
//!
//! Conventions: every function returns a `PgStatus`; out-parameters are only
//! written on `Ok`. Strings returned through out-parameters are heap
//! allocated and must be released with `pg_string_free`. A thread-local slot
//! keeps the message for the most recent error, readable via
//! `pg_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permgrid::{
    enumerate_compiled, find_basis, merge_gr_bound, merge_member, parse_class_expr,
    t_step_staircase_gr, toeplitz_eigenvalues, Budget, CompiledClass, Oracle, Permutation,
    ToeplitzSpec, DEFAULT_NODE_BUDGET,
};

/// Status codes for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidPermutation = 4,
    InvalidArgument = 5,
    BudgetExceeded = 6,
    InternalError = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NULs removed"));
    });
}

fn fail(status: PgStatus, message: impl Into<String>) -> PgStatus {
    set_error(message);
    status
}

/// An opaque permutation class: a parsed expression compiled against its own
/// membership cache. Create with `pg_class_parse`, release with
/// `pg_class_free`.
pub struct PgClass {
    oracle: Oracle,
    compiled: CompiledClass,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, PgStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(PgStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error(format!("invalid UTF-8: {e}"));
        PgStatus::InvalidUtf8
    })
}

fn parse_perm(text: &str) -> Result<Permutation, PgStatus> {
    text.parse().map_err(|e: permgrid::PermError| {
        set_error(e.to_string());
        PgStatus::InvalidPermutation
    })
}

fn to_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " "))
        .expect("NULs removed")
        .into_raw()
}

fn effective_budget(budget: u64) -> u64 {
    if budget == 0 {
        DEFAULT_NODE_BUDGET
    } else {
        budget
    }
}

fn guard<F: FnOnce() -> PgStatus>(f: F) -> PgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(PgStatus::InternalError, "internal panic"),
    }
}

/// Message for the most recent error on this thread, or NULL if none. The
/// pointer stays valid until the next failing call on the same thread; do
/// not free it.
#[no_mangle]
pub extern "C" fn pg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `pg_*` function (or NULL),
/// and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a class expression (e.g. "merge(Av(21),Av(12))") into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_parse(text: *const c_char, out: *mut *mut PgClass) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullArgument, "null out pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_class_expr(text) {
            Ok(expr) => {
                let oracle = Oracle::new();
                let compiled = oracle.compile(&expr);
                *out = Box::into_raw(Box::new(PgClass { oracle, compiled }));
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::ParseError, e.to_string()),
        }
    })
}

/// Release a class handle.
///
/// # Safety
/// `class` must come from `pg_class_parse` (or be NULL) and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn pg_class_free(class: *mut PgClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// The canonical printed form of a class. The result must be freed with
/// `pg_string_free`.
///
/// # Safety
/// `class` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_canonical(
    class: *const PgClass,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        if class.is_null() || out.is_null() {
            return fail(PgStatus::NullArgument, "null argument");
        }
        *out = to_c_string((*class).compiled.canonical().to_string());
        PgStatus::Ok
    })
}

/// Decide membership of a permutation given in textual form ("32514", or
/// comma-separated for lengths above nine; the empty string is the empty
/// permutation). A `budget` of 0 selects the default node budget.
///
/// # Safety
/// `class` must be a live handle; `perm` a valid string; `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_member(
    class: *const PgClass,
    perm: *const c_char,
    budget: u64,
    out: *mut bool,
) -> PgStatus {
    guard(|| {
        if class.is_null() || out.is_null() {
            return fail(PgStatus::NullArgument, "null argument");
        }
        let text = match read_str(perm) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let p = match parse_perm(text) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let budget = Budget::new(effective_budget(budget));
        match (*class).compiled.member(&p, &budget) {
            Ok(result) => {
                *out = result;
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::BudgetExceeded, e.to_string()),
        }
    })
}

/// Count the class by length and return the JSON form
/// {"class": ..., "counts": ["1", ...], "max_len": n}. The result must be
/// freed with `pg_string_free`.
///
/// # Safety
/// `class` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_count_json(
    class: *const PgClass,
    max_len: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        if class.is_null() || out.is_null() {
            return fail(PgStatus::NullArgument, "null argument");
        }
        let handle = &*class;
        match enumerate_compiled(
            &handle.compiled,
            max_len as usize,
            false,
            effective_budget(budget),
        ) {
            Ok(e) => {
                *out = to_c_string(e.counts.to_json().to_string());
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::BudgetExceeded, e.to_string()),
        }
    })
}

/// Minimal non-members of the class up to `max_len`, as a JSON array of
/// permutation strings. The result must be freed with `pg_string_free`.
///
/// # Safety
/// `class` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_class_basis_json(
    class: *const PgClass,
    max_len: u32,
    budget: u64,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        if class.is_null() || out.is_null() {
            return fail(PgStatus::NullArgument, "null argument");
        }
        let handle = &*class;
        let expr = match parse_class_expr(handle.compiled.canonical()) {
            Ok(expr) => expr,
            Err(e) => return fail(PgStatus::InternalError, e.to_string()),
        };
        match find_basis(
            &handle.oracle,
            &expr,
            max_len as usize,
            effective_budget(budget),
        ) {
            Ok(basis) => {
                let strings: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
                *out = to_c_string(serde_json::json!(strings).to_string());
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::BudgetExceeded, e.to_string()),
        }
    })
}

/// Decide merge membership of `perm` in left ⊙ right. When `witness_out` is
/// non-NULL it receives the witness coloring ("RBB...", index-aligned with
/// the host; empty when not a member), to be freed with `pg_string_free`.
///
/// # Safety
/// `left` and `right` must be live handles; `perm` a valid string; `out` a
/// valid pointer; `witness_out` NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_merge_member(
    left: *const PgClass,
    right: *const PgClass,
    perm: *const c_char,
    budget: u64,
    out: *mut bool,
    witness_out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        if left.is_null() || right.is_null() || out.is_null() {
            return fail(PgStatus::NullArgument, "null argument");
        }
        let text = match read_str(perm) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let p = match parse_perm(text) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let budget = Budget::new(effective_budget(budget));
        match merge_member(&(*left).compiled, &(*right).compiled, &p, &budget) {
            Ok(witness) => {
                *out = witness.is_some();
                if !witness_out.is_null() {
                    let text = witness.map(|w| w.to_string()).unwrap_or_default();
                    *witness_out = to_c_string(text);
                }
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::BudgetExceeded, e.to_string()),
        }
    })
}

/// The merge growth-rate bound (√gr_c + √gr_d)².
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_merge_gr_bound(gr_c: f64, gr_d: f64, out: *mut f64) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullArgument, "null out pointer");
        }
        match merge_gr_bound(gr_c, gr_d) {
            Ok(v) => {
                *out = v;
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Growth rate of any t-step staircase with the given cell growth rates.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_staircase_gr(
    gr_c: f64,
    gr_d: f64,
    steps: u32,
    out: *mut f64,
) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullArgument, "null out pointer");
        }
        match t_step_staircase_gr(gr_c, gr_d, steps as usize) {
            Ok(v) => {
                *out = v;
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Eigenvalues of the dim×dim tridiagonal Toeplitz matrix, written in
/// descending order to `out`.
///
/// # Safety
/// `out` must point to at least `dim` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pg_toeplitz_eigenvalues(
    sub: f64,
    diag: f64,
    sup: f64,
    dim: u32,
    out: *mut f64,
) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgStatus::NullArgument, "null out pointer");
        }
        match toeplitz_eigenvalues(&ToeplitzSpec {
            sub,
            diag,
            sup,
            dim: dim as usize,
        }) {
            Ok(values) => {
                for (i, v) in values.iter().enumerate() {
                    *out.add(i) = *v;
                }
                PgStatus::Ok
            }
            Err(e) => fail(PgStatus::InvalidArgument, e.to_string()),
        }
    })
}
