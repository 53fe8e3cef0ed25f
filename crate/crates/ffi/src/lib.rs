//! C ABI for lcplab.
//!
//! Matrices, LCP instances and certificates cross the boundary as opaque
//! handles parsed from the same JSON the CLI reads. Every function returns an
//! [`LcplabStatus`]; on failure [`lcplab_last_error`] describes the cause.
//! Result strings are JSON owned by the caller and released with
//! [`lcplab_string_free`]. Handles are released with their `_free` function;
//! passing NULL to any `_free` is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lcplab::gameval::game_value;
use lcplab::hiddenz::{classify_hidden, extended_seeds, find_certificate, verify_certificate, Certificate, ClassifyParams};
use lcplab::io::{certificate_json, matrix_json, parse_certificate, parse_input, rational_json, vector_json};
use lcplab::labgen::{run_suite, SuiteConfig, SuiteId};
use lcplab::lcpsolve::{solve_with, LcpInstance, Method};
use lcplab::rational::parse_rational;
use lcplab::{Error, RatMatrix};
use serde_json::{json, Value};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcplabStatus {
    Ok = 0,
    NullPointer = 1,
    /// Text argument is not valid UTF-8.
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Dimension = 4,
    Singular = 5,
    Range = 6,
    Precondition = 7,
    UnknownSuite = 8,
    Internal = 9,
    /// A Rust panic was caught at the boundary.
    Panic = 10,
}

/// A square or rectangular exact rational matrix.
pub struct LcplabMatrix {
    inner: RatMatrix,
}

/// An LCP instance `(q, A)` with the certificate embedded in its file, if any.
pub struct LcplabInstance {
    inner: LcpInstance,
    certificate: Option<Certificate>,
}

/// A hidden-Z certificate `(X, Y, r, s)`.
pub struct LcplabCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(LcplabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::NotSquare { .. } | Error::Dimension(_) => LcplabStatus::Dimension,
            Error::Singular { .. } => LcplabStatus::Singular,
            Error::IndexOutOfRange { .. } | Error::SizeCap { .. } | Error::Range(_) => LcplabStatus::Range,
            Error::InvalidPermutation { .. } | Error::InvalidInput(_) => LcplabStatus::InvalidInput,
            Error::Precondition(_) => LcplabStatus::Precondition,
            Error::UnknownSuite(_) => LcplabStatus::UnknownSuite,
            Error::Internal(_) => LcplabStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Runs `body`, records any failure and converts it to a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LcplabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            LcplabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside lcplab");
            LcplabStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(LcplabStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(LcplabStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(value.to_string()).map_err(|e| Failure(LcplabStatus::Internal, e.to_string()))?;
    *out = s.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next lcplab call on the same thread.
#[no_mangle]
pub extern "C" fn lcplab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned through an `out` parameter.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lcplab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix file (`{"rows": ...}`) or the `A` of an instance file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_matrix_from_json(json: *const c_char, out: *mut *mut LcplabMatrix) -> LcplabStatus {
    guard(|| {
        let parsed = parse_input(text(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(LcplabMatrix { inner: parsed.a })))
    })
}

/// # Safety
/// `m` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lcplab_matrix_free(m: *mut LcplabMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes `{"rows": ...}` with every entry as an exact rational string.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_matrix_to_json(m: *const LcplabMatrix, out: *mut *mut c_char) -> LcplabStatus {
    guard(|| write_json(out, &matrix_json(&handle(m, "matrix")?.inner)))
}

/// Exact determinant as a JSON string such as `"-3/2"`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_matrix_det(m: *const LcplabMatrix, out: *mut *mut c_char) -> LcplabStatus {
    guard(|| write_json(out, &rational_json(&handle(m, "matrix")?.inner.det()?)))
}

/// Value of the matrix game with optimal strategies:
/// `{"value", "sign", "x_star", "y_star"}`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_game_value(m: *const LcplabMatrix, out: *mut *mut c_char) -> LcplabStatus {
    guard(|| {
        let g = game_value(&handle(m, "matrix")?.inner)?;
        write_json(
            out,
            &json!({
                "value": rational_json(&g.value),
                "sign": g.sign,
                "x_star": vector_json(&g.x_star),
                "y_star": vector_json(&g.y_star),
            }),
        )
    })
}

/// Parses `{"X", "Y", "r", "s"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_certificate_from_json(json: *const c_char, out: *mut *mut LcplabCertificate) -> LcplabStatus {
    guard(|| {
        let value: Value = serde_json::from_str(text(json, "json")?)
            .map_err(|e| Failure(LcplabStatus::InvalidInput, format!("malformed JSON: {e}")))?;
        let inner = parse_certificate(&value, "$")?;
        write_out(out, Box::into_raw(Box::new(LcplabCertificate { inner })))
    })
}

/// # Safety
/// `c` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lcplab_certificate_free(c: *mut LcplabCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_certificate_to_json(c: *const LcplabCertificate, out: *mut *mut c_char) -> LcplabStatus {
    guard(|| write_json(out, &certificate_json(&handle(c, "certificate")?.inner)))
}

/// Searches for a hidden-Z certificate. On success `*out` is a new handle, or
/// NULL when none was found (which does not rule one out).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_certificate_find(m: *const LcplabMatrix, out: *mut *mut LcplabCertificate) -> LcplabStatus {
    guard(|| {
        let a = &handle(m, "matrix")?.inner;
        let found = find_certificate(a, &extended_seeds(a.order()?))?;
        let raw = found.map_or(ptr::null_mut(), |inner| Box::into_raw(Box::new(LcplabCertificate { inner })));
        write_out(out, raw)
    })
}

/// Checks a certificate exactly: `{"valid", "combination", "violations"}`.
///
/// # Safety
/// `m` and `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_certificate_verify(
    m: *const LcplabMatrix,
    c: *const LcplabCertificate,
    out: *mut *mut c_char,
) -> LcplabStatus {
    guard(|| {
        let v = verify_certificate(&handle(m, "matrix")?.inner, &handle(c, "certificate")?.inner)?;
        let violations: Vec<String> = v.violations.iter().map(|x| x.to_string()).collect();
        write_json(out, &json!({ "valid": v.valid, "combination": vector_json(&v.combination), "violations": violations }))
    })
}

/// Two-step P/P₀ certification. `c` may be NULL, in which case the verdict is
/// conditional on the matrix being hidden Z. `epsilon` and `delta` are
/// rational literals; NULL selects 1.
///
/// # Safety
/// `m` must be a live handle, `c` NULL or live, strings NULL or
/// NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_classify(
    m: *const LcplabMatrix,
    c: *const LcplabCertificate,
    epsilon: *const c_char,
    delta: *const c_char,
    out: *mut *mut c_char,
) -> LcplabStatus {
    guard(|| {
        let a = &handle(m, "matrix")?.inner;
        let mut params = ClassifyParams::default();
        if let Some(e) = optional_text(epsilon, "epsilon")? {
            params.epsilon = parse_rational(e)?;
        }
        if let Some(d) = optional_text(delta, "delta")? {
            params.delta = parse_rational(d)?;
        }
        let r = classify_hidden(a, &params, c.as_ref().map(|c| &c.inner))?;
        write_json(
            out,
            &json!({
                "verdict": r.verdict,
                "conditional": r.conditional,
                "step1_feasible": r.step1_feasible,
                "step2_feasible": r.step2_feasible,
                "witness": r.witness.as_deref().map(vector_json),
                "slack": r.slack.as_ref().map(rational_json),
            }),
        )
    })
}

/// Parses an instance file; `q` is required.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_instance_from_json(json: *const c_char, out: *mut *mut LcplabInstance) -> LcplabStatus {
    guard(|| {
        let parsed = parse_input(text(json, "json")?)?;
        let q = parsed.q.ok_or_else(|| Failure(LcplabStatus::InvalidInput, "instance needs \"q\"".into()))?;
        let inner = LcpInstance::new(parsed.a, q)?;
        write_out(out, Box::into_raw(Box::new(LcplabInstance { inner, certificate: parsed.certificate })))
    })
}

/// # Safety
/// `inst` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn lcplab_instance_free(inst: *mut LcplabInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Solves the LCP with `method` (`lemke`, `crisscross`, `lp`, `enumerate`).
/// The LP method uses the instance's embedded certificate. Writes
/// `{"method", "status", "pivots", "z"?, "w"?, "degenerate"?, "objective"?}`;
/// a non-`Solved` status is still `LCPLAB_STATUS_OK`.
///
/// # Safety
/// `inst` must be a live handle, `method` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_solve(inst: *const LcplabInstance, method: *const c_char, out: *mut *mut c_char) -> LcplabStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        let method: Method = text(method, "method")?.parse()?;
        let o = solve_with(&inst.inner, method, inst.certificate.as_ref())?;
        let mut v = json!({ "method": method.name(), "status": o.status, "pivots": o.pivots });
        if let Some(s) = &o.solution {
            v["z"] = vector_json(&s.z);
            v["w"] = vector_json(&s.w);
            v["degenerate"] = json!(s.degenerate);
        }
        if let Some(obj) = &o.objective {
            v["objective"] = rational_json(obj);
        }
        write_json(out, &v)
    })
}

/// Runs a registered property suite and writes its report. `jobs` = 0 uses
/// the default thread count.
///
/// # Safety
/// `id` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcplab_suite_run(
    id: *const c_char,
    trials: usize,
    n_max: usize,
    seed: u64,
    jobs: usize,
    out: *mut *mut c_char,
) -> LcplabStatus {
    guard(|| {
        let id: SuiteId = text(id, "id")?.parse()?;
        let report = run_suite(id, &SuiteConfig { trials, n_max, seed, jobs })?;
        let value: Value = serde_json::from_str(&report.to_json()).map_err(|e| Failure(LcplabStatus::Internal, e.to_string()))?;
        write_json(out, &value)
    })
}
