//! C interface to the `clevershop` solvers.
//!
//! Instances and solutions are opaque handles owned by the caller and
//! released with their `*_free` function. Every fallible call returns a
//! [`CsStatus`]; on failure a message is kept per thread and can be read
//! with [`cs_last_error_message`]. Strings returned through out-parameters
//! are owned by the caller and released with [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clevershop::io::{parse_instance, serialize_instance, serialize_solution};
use clevershop::solve::{solve, Algorithm, Limits};
use clevershop::{Instance, SolveResult, SolverError};

/// Result of an FFI call. Codes 0 to 3 match the exit codes of the binary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    /// A solution was produced but costs more than the budget.
    OverBudget = 1,
    /// Malformed text, an invalid instance or an unmet solver precondition.
    InvalidInput = 2,
    /// A solver cap was exceeded.
    ResourceLimit = 3,
    NullPointer = 4,
    /// Non UTF-8 text, an unknown algorithm or an out of range index.
    InvalidArgument = 5,
    /// The library panicked.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsAlgorithm {
    Oracle = 0,
    SubsetDp = 1,
    PriceDp = 2,
    Matching2 = 3,
    Fstar = 4,
    Greedy = 5,
}

const ALGORITHMS: [(CsAlgorithm, Algorithm); 6] = [
    (CsAlgorithm::Oracle, Algorithm::Oracle),
    (CsAlgorithm::SubsetDp, Algorithm::SubsetDp),
    (CsAlgorithm::PriceDp, Algorithm::PriceDp),
    (CsAlgorithm::Matching2, Algorithm::Matching2),
    (CsAlgorithm::Fstar, Algorithm::Fstar),
    (CsAlgorithm::Greedy, Algorithm::Greedy),
];

fn algorithm_of_code(code: i32) -> Result<Algorithm, Failure> {
    ALGORITHMS
        .iter()
        .find(|(c, _)| *c as i32 == code)
        .map(|&(_, a)| a)
        .ok_or_else(|| {
            Failure::new(
                CsStatus::InvalidArgument,
                format!("unknown algorithm code {code}"),
            )
        })
}

/// Opaque validated instance.
pub struct CsInstance {
    inner: Instance,
}

/// Opaque solver result.
pub struct CsSolution {
    result: SolveResult,
    within_budget: Option<bool>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: CsStatus,
    message: String,
}

impl Failure {
    fn new(status: CsStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Self::new(CsStatus::NullPointer, format!("`{what}` is null"))
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let status = if e.is_resource_limit() {
            CsStatus::ResourceLimit
        } else {
            CsStatus::InvalidInput
        };
        Self::new(status, e.to_string())
    }
}

fn set_last_error(message: String) {
    // interior NULs cannot cross the boundary
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

/// Runs `body`, records any failure and converts it to a status.
fn guard(body: impl FnOnce() -> Result<CsStatus, Failure>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            status
        }
        Ok(Err(failure)) => {
            set_last_error(failure.message);
            failure.status
        }
        Err(_) => {
            set_last_error("internal panic".to_owned());
            CsStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(text).to_str().map_err(|e| {
        Failure::new(
            CsStatus::InvalidArgument,
            format!("`{what}` is not UTF-8: {e}"),
        )
    })
}

unsafe fn deref<'a, T>(handle: *const T, what: &str) -> Result<&'a T, Failure> {
    handle.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(CsStatus::Internal, "text contains a NUL byte"))
}

/// Parses an instance in the `CLEVERSHOP 1` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_instance_parse(
    text: *const c_char,
    out: *mut *mut CsInstance,
) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        out.write(ptr::null_mut());
        let text = read_str(text, "text")?;
        let inner = parse_instance(text)
            .map_err(|e| Failure::new(CsStatus::InvalidInput, e.to_string()))?;
        out.write(Box::into_raw(Box::new(CsInstance { inner })));
        Ok(CsStatus::Ok)
    })
}

/// # Safety
/// `instance` must come from [`cs_instance_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cs_instance_free(instance: *mut CsInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of books, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_instance_num_books(instance: *const CsInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.num_books())
}

/// Number of shops, or 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_instance_num_shops(instance: *const CsInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.num_shops())
}

/// Writes the canonical text form of `instance` to `*out`.
///
/// # Safety
/// `instance` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_instance_serialize(
    instance: *const CsInstance,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        let instance = deref(instance, "instance")?;
        let text = to_c_string(serialize_instance(&instance.inner))?;
        write_out(out, text, "out").inspect_err(|_| drop(CString::from_raw(text)))?;
        Ok(CsStatus::Ok)
    })
}

/// Solves `instance` with `algorithm`, a [`CsAlgorithm`] value, under the
/// default caps.
///
/// The budget is `budget` when `has_budget` is true, else the instance's own.
/// A solution over budget is still written to `*out` and the call returns
/// [`CsStatus::OverBudget`].
///
/// # Safety
/// `instance` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solve(
    instance: *const CsInstance,
    algorithm: i32,
    has_budget: bool,
    budget: i64,
    out: *mut *mut CsSolution,
) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        out.write(ptr::null_mut());
        let instance = deref(instance, "instance")?;
        let algorithm = algorithm_of_code(algorithm)?;
        let budget = has_budget.then_some(budget);
        let outcome = solve(&instance.inner, algorithm, budget, &Limits::default())?;
        let status = match outcome.within_budget {
            Some(false) => CsStatus::OverBudget,
            _ => CsStatus::Ok,
        };
        out.write(Box::into_raw(Box::new(CsSolution {
            result: outcome.result,
            within_budget: outcome.within_budget,
        })));
        Ok(status)
    })
}

/// Writes the [`CsAlgorithm`] code of a command-line name, e.g. `subset-dp`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_algorithm_from_name(name: *const c_char, out: *mut i32) -> CsStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let algorithm = name
            .parse::<Algorithm>()
            .map_err(|e| Failure::new(CsStatus::InvalidArgument, e))?;
        let code = ALGORITHMS
            .iter()
            .find(|&&(_, a)| a == algorithm)
            .map(|&(c, _)| c as i32)
            .expect("every algorithm has a code");
        write_out(out, code, "out")?;
        Ok(CsStatus::Ok)
    })
}

/// # Safety
/// `solution` must come from [`cs_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_free(solution: *mut CsSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_total_cost(
    solution: *const CsSolution,
    out: *mut i64,
) -> CsStatus {
    guard(|| {
        let solution = deref(solution, "solution")?;
        write_out(out, solution.result.total_cost, "out")?;
        Ok(CsStatus::Ok)
    })
}

/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_total_discount(
    solution: *const CsSolution,
    out: *mut i64,
) -> CsStatus {
    guard(|| {
        let solution = deref(solution, "solution")?;
        write_out(out, solution.result.total_discount, "out")?;
        Ok(CsStatus::Ok)
    })
}

/// Number of books in the assignment, or 0 for a null handle.
///
/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_num_books(solution: *const CsSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.result.assignment.len())
}

/// Writes the 0-based shop index chosen for 0-based `book`.
///
/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_shop_of(
    solution: *const CsSolution,
    book: usize,
    out: *mut usize,
) -> CsStatus {
    guard(|| {
        let solution = deref(solution, "solution")?;
        let assignment = &solution.result.assignment;
        if book >= assignment.len() {
            return Err(Failure::new(
                CsStatus::InvalidArgument,
                format!("book index {book} out of range 0..{}", assignment.len()),
            ));
        }
        write_out(out, assignment.shop_of(book), "out")?;
        Ok(CsStatus::Ok)
    })
}

/// Writes 1 if a budget applied and was met, 0 if it was exceeded and -1
/// if no budget applied.
///
/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_within_budget(
    solution: *const CsSolution,
    out: *mut i32,
) -> CsStatus {
    guard(|| {
        let solution = deref(solution, "solution")?;
        let value = match solution.within_budget {
            Some(true) => 1,
            Some(false) => 0,
            None => -1,
        };
        write_out(out, value, "out")?;
        Ok(CsStatus::Ok)
    })
}

/// Writes the solution in the `ASSIGN`/`COST` text format to `*out`.
///
/// # Safety
/// `solution` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cs_solution_serialize(
    solution: *const CsSolution,
    out: *mut *mut c_char,
) -> CsStatus {
    guard(|| {
        let solution = deref(solution, "solution")?;
        let text = to_c_string(serialize_solution(&solution.result))?;
        write_out(out, text, "out").inspect_err(|_| drop(CString::from_raw(text)))?;
        Ok(CsStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null after a success.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
