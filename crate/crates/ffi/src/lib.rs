//! C ABI for the hopfdouble toolkit.
//!
//! # Handle model
//!
//! Groups, Hopf algebras and quantum doubles are returned as opaque
//! pointers. Every constructor writes through an out-parameter and returns
//! a status code; a handle is only written on `HD_OK`. Handles are freed
//! with the matching `hd_*_free`, which accepts null.
//!
//! Reports come back as heap-allocated, NUL-terminated JSON strings with
//! the same schema the command-line tool prints; release them with
//! [`hd_string_free`]. When a verification report is produced but some
//! check failed, the function returns `HD_CHECK_FAILED` and still writes
//! the report.
//!
//! # Errors and panics
//!
//! The most recent error message for the calling thread is available via
//! [`hd_last_error`]; the pointer stays valid until the next failing call
//! on the same thread. Panics are caught at the boundary and surface as
//! `HD_INTERNAL_ERROR` instead of unwinding across the ABI.
//!
//! The matching declarations live in `include/hopfdouble.h`, maintained by
//! hand next to this file.

// Dereferencing raw pointers in `extern "C"` signatures is inherent to the
// ABI; the pointer contracts are stated in the header and per function.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use hopfdouble::double::DrinfeldDouble;
use hopfdouble::format::{parse_algebra_json, parse_group_json, AlgebraSpecFile, GroupSpecFile};
use hopfdouble::group::{class_calculus, function_hopf, FiniteGroup, GroupDoubleContext};
use hopfdouble::hopf::{verify_hopf_axioms, DualPair, HopfAlgebra};
use hopfdouble::report;
use hopfdouble::Error;

/// Packed ABI version, major in the upper 16 bits.
pub const HD_ABI_VERSION: u32 = 1 << 16;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HdStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    CheckFailed = 3,
    LimitExceeded = 4,
    InternalError = 5,
}

/// Opaque finite group.
pub struct HdGroup(FiniteGroup);
/// Opaque Hopf algebra, verified at construction.
pub struct HdHopf(Arc<HopfAlgebra>);
/// Opaque quantum double.
pub struct HdDouble(Arc<DrinfeldDouble>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> HdStatus {
    match e {
        Error::Parse(_) | Error::InvalidGroup(_) | Error::Shape(_) | Error::DivisionByZero => {
            HdStatus::ParseError
        }
        Error::LimitExceeded { .. } => HdStatus::LimitExceeded,
        Error::InvalidInput(_) | Error::ParentMismatch(_) => HdStatus::InvalidArgument,
        Error::AxiomsFailed(_) | Error::Inconsistent(_) | Error::SingularMatrix => {
            HdStatus::CheckFailed
        }
    }
}

fn fail(e: &Error) -> HdStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Run a closure, translating panics into `HD_INTERNAL_ERROR`.
fn guarded(body: impl FnOnce() -> HdStatus) -> HdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(&message);
            HdStatus::InternalError
        }
    }
}

/// # Safety
/// `ptr` must be null or point to a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HdStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(HdStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        HdStatus::InvalidArgument
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> HdStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HdStatus::InvalidArgument;
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HdStatus::Ok
        }
        Err(_) => {
            set_error("report contained an interior NUL byte");
            HdStatus::InternalError
        }
    }
}

fn write_handle<T>(out: *mut *mut T, value: T) -> HdStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HdStatus::InvalidArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    HdStatus::Ok
}

/// Write a report, downgrading to `CheckFailed` when a check failed.
fn write_report(out: *mut *mut c_char, passed: bool, text: String, what: &str) -> HdStatus {
    let status = write_string(out, text);
    if status != HdStatus::Ok {
        return status;
    }
    if passed {
        HdStatus::Ok
    } else {
        set_error(&format!("a {what} check failed; see the report"));
        HdStatus::CheckFailed
    }
}

#[no_mangle]
pub extern "C" fn hd_abi_version() -> u32 {
    HD_ABI_VERSION
}

/// Message of the most recent failure on this thread. Never null; empty
/// before the first failure. Valid until the next failing call here.
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Free a string returned by any report function. Null is a no-op.
#[no_mangle]
pub extern "C" fn hd_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        unsafe {
            drop(CString::from_raw(ptr));
        }
    }
}

macro_rules! free_fn {
    ($(#[$doc:meta])* $name:ident, $ty:ty) => {
        $(#[$doc])*
        #[no_mangle]
        pub extern "C" fn $name(ptr: *mut $ty) {
            if !ptr.is_null() {
                unsafe {
                    drop(Box::from_raw(ptr));
                }
            }
        }
    };
}

free_fn!(
    /// Free a group handle. Null is a no-op.
    hd_group_free,
    HdGroup
);
free_fn!(
    /// Free a Hopf algebra handle. Null is a no-op.
    hd_hopf_free,
    HdHopf
);
free_fn!(
    /// Free a quantum double handle. Null is a no-op.
    hd_double_free,
    HdDouble
);

/// Close permutation generators in cycle notation (e.g. `"(12),(123)"`)
/// into a group of order at most `max_order`.
#[no_mangle]
pub extern "C" fn hd_group_from_generators(
    generators: *const c_char,
    max_order: u32,
    out: *mut *mut HdGroup,
) -> HdStatus {
    guarded(|| {
        let text = match unsafe { read_str(generators) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        match FiniteGroup::from_generators(text, max_order as usize) {
            Ok(group) => write_handle(out, HdGroup(group)),
            Err(e) => fail(&e),
        }
    })
}

/// Load a group from Cayley-table JSON (`group-table/1`).
#[no_mangle]
pub extern "C" fn hd_group_from_table_json(
    json: *const c_char,
    max_order: u32,
    out: *mut *mut HdGroup,
) -> HdStatus {
    guarded(|| {
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec: GroupSpecFile = match parse_group_json(text) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        match spec.to_group(max_order as usize) {
            Ok(group) => write_handle(out, HdGroup(group)),
            Err(e) => fail(&e),
        }
    })
}

/// Number of elements; 0 on a null handle.
#[no_mangle]
pub extern "C" fn hd_group_order(group: *const HdGroup) -> u32 {
    if group.is_null() {
        return 0;
    }
    unsafe { (*group).0.order() as u32 }
}

/// Number of conjugacy classes; 0 on a null handle.
#[no_mangle]
pub extern "C" fn hd_group_class_count(group: *const HdGroup) -> u32 {
    if group.is_null() {
        return 0;
    }
    unsafe { (*group).0.conjugacy_classes().len() as u32 }
}

/// Order, labels and conjugacy classes as JSON.
#[no_mangle]
pub extern "C" fn hd_group_info_json(
    group: *const HdGroup,
    out_json: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        if group.is_null() {
            set_error("null group handle");
            return HdStatus::InvalidArgument;
        }
        let g = unsafe { &(*group).0 };
        let classes: Vec<report::ClassOut> = g
            .conjugacy_classes()
            .iter()
            .enumerate()
            .map(|(i, c)| report::ClassOut::new(i, c, g.labels()))
            .collect();
        let out = report::GroupInfoReport {
            order: g.order(),
            labels: g.labels().to_vec(),
            classes,
        };
        write_string(out_json, report::to_json_pretty(&out))
    })
}

/// Conjugacy-class calculi with all exactness checks.
#[no_mangle]
pub extern "C" fn hd_group_calculi_json(
    group: *const HdGroup,
    out_json: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        if group.is_null() {
            set_error("null group handle");
            return HdStatus::InvalidArgument;
        }
        let g = unsafe { (*group).0.clone() };
        let ctx = match GroupDoubleContext::new(g) {
            Ok(c) => c,
            Err(e) => return fail(&e),
        };
        match report::class_calculi_report(&ctx, None) {
            Ok((passed, out)) => {
                write_report(out_json, passed, report::to_json_pretty(&out), "calculus")
            }
            Err(e) => fail(&e),
        }
    })
}

/// Hochschild cohomology report for one conjugacy class.
#[no_mangle]
pub extern "C" fn hd_group_cohomology_json(
    group: *const HdGroup,
    class_index: u32,
    out_json: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        if group.is_null() {
            set_error("null group handle");
            return HdStatus::InvalidArgument;
        }
        let g = unsafe { (*group).0.clone() };
        let ctx = match GroupDoubleContext::new(g) {
            Ok(c) => c,
            Err(e) => return fail(&e),
        };
        let classes = ctx.classes();
        let Some(class) = classes.get(class_index as usize) else {
            set_error("class index out of range");
            return HdStatus::InvalidArgument;
        };
        let result = match class_calculus(&ctx, class) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let rep = match ctx.class_representation(class) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let class_out = report::ClassOut::new(class_index as usize, class, ctx.group.labels());
        match report::cohomology_report(&rep, Some(class_out), result.calculus.as_ref()) {
            Ok((passed, out)) => {
                write_report(out_json, passed, report::to_json_pretty(&out), "cohomology")
            }
            Err(e) => fail(&e),
        }
    })
}

/// The algebra of functions on a group, as a verified Hopf algebra handle.
#[no_mangle]
pub extern "C" fn hd_group_function_hopf(group: *const HdGroup, out: *mut *mut HdHopf) -> HdStatus {
    guarded(|| {
        if group.is_null() {
            set_error("null group handle");
            return HdStatus::InvalidArgument;
        }
        let g = unsafe { &(*group).0 };
        match function_hopf(g) {
            Ok(h) => write_handle(out, HdHopf(h)),
            Err(e) => fail(&e),
        }
    })
}

/// Load and verify a Hopf algebra from structure-constant JSON
/// (`hopf-algebra/1`). `HD_CHECK_FAILED` when an axiom breaks.
#[no_mangle]
pub extern "C" fn hd_hopf_from_json(
    json: *const c_char,
    max_dim: u32,
    out: *mut *mut HdHopf,
) -> HdStatus {
    guarded(|| {
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec: AlgebraSpecFile = match parse_algebra_json(text) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        if spec.dim > max_dim as usize {
            return fail(&Error::LimitExceeded {
                dim: spec.dim,
                max: max_dim as usize,
            });
        }
        let structure = match spec.to_structure() {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        match HopfAlgebra::new(structure) {
            Ok(h) => write_handle(out, HdHopf(h)),
            Err(e) => fail(&e),
        }
    })
}

/// Dimension of the algebra; 0 on a null handle.
#[no_mangle]
pub extern "C" fn hd_hopf_dim(hopf: *const HdHopf) -> u32 {
    if hopf.is_null() {
        return 0;
    }
    unsafe { (*hopf).0.dim() as u32 }
}

/// Serialize the algebra back to structure-constant JSON.
#[no_mangle]
pub extern "C" fn hd_hopf_to_json(hopf: *const HdHopf, out_json: *mut *mut c_char) -> HdStatus {
    guarded(|| {
        if hopf.is_null() {
            set_error("null algebra handle");
            return HdStatus::InvalidArgument;
        }
        let spec = AlgebraSpecFile::from_structure(unsafe { (*hopf).0.structure() });
        write_string(out_json, report::to_json_pretty(&spec))
    })
}

/// Run the axiom checker on structure-constant JSON; the per-axiom report
/// is written whenever the input is well-formed.
#[no_mangle]
pub extern "C" fn hd_verify_hopf_json(
    json: *const c_char,
    max_dim: u32,
    out_report: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec: AlgebraSpecFile = match parse_algebra_json(text) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        if spec.dim > max_dim as usize {
            return fail(&Error::LimitExceeded {
                dim: spec.dim,
                max: max_dim as usize,
            });
        }
        let structure = match spec.to_structure() {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let axioms = match verify_hopf_axioms(&structure) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let passed = axioms.all_passed();
        let out = report::VerifyHopfReport {
            dim: structure.dim,
            basis_labels: structure.labels.clone(),
            axioms: report::AxiomReportOut::from_report(&axioms),
        };
        write_report(
            out_report,
            passed,
            report::to_json_pretty(&out),
            "Hopf axiom",
        )
    })
}

/// Build the quantum double of a verified Hopf algebra.
#[no_mangle]
pub extern "C" fn hd_double_build(hopf: *const HdHopf, out: *mut *mut HdDouble) -> HdStatus {
    guarded(|| {
        if hopf.is_null() {
            set_error("null algebra handle");
            return HdStatus::InvalidArgument;
        }
        let base = unsafe { Arc::clone(&(*hopf).0) };
        let pair = match DualPair::new(base) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        match DrinfeldDouble::new(pair) {
            Ok(d) => write_handle(out, HdDouble(Arc::new(d))),
            Err(e) => fail(&e),
        }
    })
}

/// Dimension of the double; 0 on a null handle.
#[no_mangle]
pub extern "C" fn hd_double_dim(double: *const HdDouble) -> u32 {
    if double.is_null() {
        return 0;
    }
    unsafe { (*double).0.dim() as u32 }
}

/// Axiom and quasi-triangularity report for the double.
#[no_mangle]
pub extern "C" fn hd_double_verify_json(
    double: *const HdDouble,
    out_report: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        if double.is_null() {
            set_error("null double handle");
            return HdStatus::InvalidArgument;
        }
        let d = unsafe { &(*double).0 };
        match report::double_report(d) {
            Ok((passed, out)) => {
                write_report(out_report, passed, report::to_json_pretty(&out), "double")
            }
            Err(e) => fail(&e),
        }
    })
}

/// Residual report for the deformed-Euclidean representation at the given
/// deformation parameters; the built-in samples apply when `n_z` is 0.
#[no_mangle]
pub extern "C" fn hd_eq2_json(
    z_values: *const f64,
    n_z: usize,
    tol: f64,
    out_report: *mut *mut c_char,
) -> HdStatus {
    guarded(|| {
        let zs: Vec<f64> = if n_z == 0 {
            Vec::new()
        } else {
            if z_values.is_null() {
                set_error("null z array with nonzero length");
                return HdStatus::InvalidArgument;
            }
            unsafe { std::slice::from_raw_parts(z_values, n_z) }.to_vec()
        };
        match report::eq2_report(&zs, tol) {
            Ok((passed, out)) => {
                write_report(out_report, passed, report::to_json_pretty(&out), "residual")
            }
            Err(e) => fail(&e),
        }
    })
}
