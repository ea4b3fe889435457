//! C interface to the `dgb` library.
//!
//! Every object is an opaque handle released by its `*_free` function.
//! Fallible calls return a [`DgbStatus`]; the message of the most recent
//! failure on the calling thread is available from [`dgb_last_error`].
//! Strings returned by the library are released with [`dgb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use dgb_core::completion::{interreduce, minimalize, sigma_gbasis, verify_sigma_gbasis, CompletionOptions, Mode, SigmaBasis, Status};
use dgb_core::io::{parse_poly, parse_problem, serialize_basis, ConfigEcho, ProblemFile, RunReport};
use dgb_core::reduction::{Reducers, ShiftPolicy};
use dgb_core::{Poly, Ring};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input text could not be parsed.
    ParseError = 3,
    /// The library rejected the request.
    InvalidInput = 4,
    /// An index was out of range.
    OutOfRange = 5,
    /// An internal error; the handle arguments are left untouched.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgbMode {
    Plain = 0,
    Truncated = 1,
    Adaptive = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgbBasisStatus {
    Complete = 0,
    CompleteUpToOrder = 1,
    BudgetExhausted = 2,
}

/// Options for [`dgb_compute`]. Start from [`dgb_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct DgbOptions {
    pub mode: DgbMode,
    /// Order bound for `Truncated`; must be non-negative.
    pub truncate: i64,
    pub chain_criterion: bool,
    pub pair_budget: u64,
    pub order_cap: u64,
    pub minimal: bool,
    pub interreduce: bool,
}

/// A parsed problem: ring and generators.
pub struct DgbProblem {
    file: ProblemFile,
}

/// The result of a completion run.
pub struct DgbBasis {
    basis: SigmaBasis,
    elements: Vec<Poly>,
    report: RunReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: DgbStatus, msg: impl Into<String>) -> DgbStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> DgbStatus) -> DgbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(DgbStatus::Panic, "internal error"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DgbStatus> {
    if p.is_null() {
        return Err(fail(DgbStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DgbStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn core_error(e: dgb_core::Error) -> DgbStatus {
    let status = match e {
        dgb_core::Error::Parse { .. } => DgbStatus::ParseError,
        _ => DgbStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn dgb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dgb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dgb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn dgb_options_default() -> DgbOptions {
    let d = CompletionOptions::default();
    DgbOptions {
        mode: DgbMode::Plain,
        truncate: 0,
        chain_criterion: d.chain_criterion,
        pair_budget: d.max_pairs,
        order_cap: d.max_order,
        minimal: false,
        interreduce: false,
    }
}

/// Parse a problem file with a `ring` and an `ideal` block.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dgb_problem_parse(text: *const c_char, out: *mut *mut DgbProblem) -> DgbStatus {
    guard(|| {
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_problem(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(DgbProblem { file }));
                DgbStatus::Ok
            }
            Err(e) => core_error(e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from [`dgb_problem_parse`].
#[no_mangle]
pub unsafe extern "C" fn dgb_problem_free(p: *mut DgbProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of generators in the problem, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live problem handle.
#[no_mangle]
pub unsafe extern "C" fn dgb_problem_generator_count(p: *const DgbProblem) -> usize {
    p.as_ref().map_or(0, |p| p.file.ideal.len())
}

fn options(o: &DgbOptions) -> CompletionOptions {
    let mode = match o.mode {
        DgbMode::Plain => Mode::Plain,
        DgbMode::Truncated => Mode::Truncated(o.truncate),
        DgbMode::Adaptive => Mode::Adaptive,
    };
    CompletionOptions {
        mode,
        chain_criterion: o.chain_criterion,
        max_pairs: o.pair_budget,
        max_order: o.order_cap,
    }
}

/// Complete the generators of `problem`. `opts` may be null for defaults.
///
/// # Safety
/// `problem` must be a live handle, `opts` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_compute(
    problem: *const DgbProblem,
    opts: *const DgbOptions,
    out: *mut *mut DgbBasis,
) -> DgbStatus {
    guard(|| {
        let Some(p) = problem.as_ref() else {
            return fail(DgbStatus::NullArgument, "null problem handle");
        };
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        let o = opts.as_ref().copied().unwrap_or_else(|| dgb_options_default());
        let copts = options(&o);
        let ring = &p.file.ring;
        let start = Instant::now();
        let basis = match sigma_gbasis(ring, &p.file.ideal, &copts) {
            Ok(b) => b,
            Err(e) => return core_error(e),
        };
        let elements = finish(ring, &basis.elements, o.minimal, o.interreduce);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let report = RunReport::new(&basis, &elements, ms, ConfigEcho::new(ring, &copts, o.minimal, o.interreduce));
        *out = Box::into_raw(Box::new(DgbBasis {
            basis,
            elements,
            report,
        }));
        DgbStatus::Ok
    })
}

fn finish(ring: &Ring, elements: &[Poly], minimal: bool, inter: bool) -> Vec<Poly> {
    if inter {
        interreduce(ring, elements)
    } else if minimal {
        minimalize(ring, elements)
    } else {
        elements.to_vec()
    }
}

/// # Safety
/// `b` must be null or a handle from [`dgb_compute`].
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_free(b: *mut DgbBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Status of a run. `order` receives the truncation order for
/// `CompleteUpToOrder` and may be null.
///
/// # Safety
/// `b` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_status(b: *const DgbBasis, order: *mut u64) -> DgbBasisStatus {
    let b = &*b;
    match b.basis.status {
        Status::Complete => DgbBasisStatus::Complete,
        Status::CompleteUpToOrder(d) => {
            if !order.is_null() {
                *order = d;
            }
            DgbBasisStatus::CompleteUpToOrder
        }
        Status::BudgetExhausted => DgbBasisStatus::BudgetExhausted,
    }
}

/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_len(b: *const DgbBasis) -> usize {
    b.as_ref().map_or(0, |b| b.elements.len())
}

/// Element `i` in the problem's text syntax.
///
/// # Safety
/// `b` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_element(b: *const DgbBasis, i: usize, out: *mut *mut c_char) -> DgbStatus {
    guard(|| {
        let Some(b) = b.as_ref() else {
            return fail(DgbStatus::NullArgument, "null basis handle");
        };
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        let Some(g) = b.elements.get(i) else {
            return fail(DgbStatus::OutOfRange, format!("index {i} out of range for {} elements", b.elements.len()));
        };
        *out = to_c_string(b.basis.ring.fmt_poly(g));
        DgbStatus::Ok
    })
}

/// The basis as a complete problem file that parses back.
///
/// # Safety
/// `b` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_serialize(b: *const DgbBasis, out: *mut *mut c_char) -> DgbStatus {
    guard(|| {
        let Some(b) = b.as_ref() else {
            return fail(DgbStatus::NullArgument, "null basis handle");
        };
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        *out = to_c_string(serialize_basis(&b.basis.ring, &b.elements));
        DgbStatus::Ok
    })
}

/// The JSON run report.
///
/// # Safety
/// `b` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_basis_report_json(b: *const DgbBasis, out: *mut *mut c_char) -> DgbStatus {
    guard(|| {
        let Some(b) = b.as_ref() else {
            return fail(DgbStatus::NullArgument, "null basis handle");
        };
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        match serde_json::to_string(&b.report) {
            Ok(s) => {
                *out = to_c_string(s);
                DgbStatus::Ok
            }
            Err(e) => fail(DgbStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Check whether the generators of `problem` already form a Gröbner
/// Σ-basis.
///
/// # Safety
/// `problem` must be a live handle and `is_basis` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_verify(problem: *const DgbProblem, is_basis: *mut bool) -> DgbStatus {
    guard(|| {
        let Some(p) = problem.as_ref() else {
            return fail(DgbStatus::NullArgument, "null problem handle");
        };
        if is_basis.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        match verify_sigma_gbasis(&p.file.ring, &p.file.ideal) {
            Ok(r) => {
                *is_basis = r.is_basis;
                DgbStatus::Ok
            }
            Err(e) => core_error(e),
        }
    })
}

/// Fully reduce `poly` modulo the generators of `problem`.
///
/// # Safety
/// `problem` must be a live handle, `poly` a nul-terminated string and
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dgb_reduce(problem: *const DgbProblem, poly: *const c_char, out: *mut *mut c_char) -> DgbStatus {
    guard(|| {
        let Some(p) = problem.as_ref() else {
            return fail(DgbStatus::NullArgument, "null problem handle");
        };
        if out.is_null() {
            return fail(DgbStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(poly) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let ring = &p.file.ring;
        let f = match parse_poly(ring, text) {
            Ok(f) => f,
            Err(e) => return core_error(e),
        };
        let basis: Vec<Poly> = p.file.ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
        let h = Reducers::new(ring, basis).reduce_full(ring, &f, ShiftPolicy::Unbounded, None);
        *out = to_c_string(ring.fmt_poly(&h));
        DgbStatus::Ok
    })
}
