//! C ABI over `mixvol`.
//!
//! Polyhedra and pairs live behind opaque handles owned by the caller and
//! released with the matching `_free` function. Every call returns an
//! [`MvStatus`]; on failure [`mv_last_error_message`] describes the cause.
//! Rational results come back as `"p/q"` strings released with
//! [`mv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixvol::mixed::{self, Method};
use mixvol::problem::{self, Problem};
use mixvol::{invariants, polyhedron, MixvolError, Polyhedron, PolyhedronPair, Rational};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input is well formed but violates a hypothesis of the operation.
    Precondition = 2,
    /// The input is malformed: bad JSON, unknown fields, invalid UTF-8.
    Schema = 3,
    /// An internal failure was contained at the boundary.
    Internal = 4,
}

/// How mixed volumes of pairs are evaluated.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvMethod {
    FaceFormula = 0,
    Polarization = 1,
    Truncation = 2,
}

impl From<MvMethod> for Method {
    fn from(m: MvMethod) -> Self {
        match m {
            MvMethod::FaceFormula => Method::FaceFormula,
            MvMethod::Polarization => Method::Polarization,
            MvMethod::Truncation => Method::Truncation,
        }
    }
}

/// Opaque polyhedron handle.
pub struct MvPolyhedron(Polyhedron);

/// Opaque handle for a pair of polyhedra with bounded difference.
pub struct MvPair(PolyhedronPair);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null(&'static str),
    Mixvol(MixvolError),
}

impl From<MixvolError> for Failure {
    fn from(e: MixvolError) -> Self {
        Failure::Mixvol(e)
    }
}

/// Runs `f`, recording its failure and containing panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            MvStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer passed as `{what}`"));
            MvStatus::NullArgument
        }
        Ok(Err(Failure::Mixvol(e))) => {
            set_last_error(&e.to_string());
            if e.is_schema() {
                MvStatus::Schema
            } else {
                MvStatus::Precondition
            }
        }
        Err(_) => {
            set_last_error("internal error");
            MvStatus::Internal
        }
    }
}

unsafe fn reference<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn text<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(CStr::from_ptr(s).to_str().map_err(|_| MixvolError::Schema(format!("`{what}` is not valid UTF-8")))?)
}

unsafe fn handles<'a, T>(items: *const *const T, count: usize, what: &'static str) -> Result<Vec<&'a T>, Failure> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if items.is_null() {
        return Err(Failure::Null(what));
    }
    std::slice::from_raw_parts(items, count).iter().map(|&p| reference(p, what)).collect()
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON and rationals contain no nul bytes").into_raw()
}

/// Checks `out` before computing, then stores the value as a string.
unsafe fn rational_call(out: *mut *mut c_char, f: impl FnOnce() -> Result<Rational, Failure>) -> MvStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let value = f()?;
        out.write(c_string(value.to_string()));
        Ok(())
    })
}

/// Message describing the last failure on this thread, empty after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON polyhedron literal or `newton` shorthand.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_polyhedron_from_json(json: *const c_char, out: *mut *mut MvPolyhedron) -> MvStatus {
    guard(|| {
        let v: serde_json::Value =
            serde_json::from_str(text(json, "json")?).map_err(|e| MixvolError::Schema(format!("invalid JSON: {e}")))?;
        let p = problem::poly(&v)?;
        write_out(out, Box::into_raw(Box::new(MvPolyhedron(p))), "out")
    })
}

/// `conv(exponents) + R^dim_+`; `exponents` holds `count` rows of `dim`
/// integers.
///
/// # Safety
/// `exponents` must point to `count * dim` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_polyhedron_newton(
    dim: usize,
    exponents: *const i64,
    count: usize,
    out: *mut *mut MvPolyhedron,
) -> MvStatus {
    guard(|| {
        if exponents.is_null() && count * dim > 0 {
            return Err(Failure::Null("exponents"));
        }
        let flat = if count * dim == 0 { &[][..] } else { std::slice::from_raw_parts(exponents, count * dim) };
        let rows: Vec<Vec<i64>> = if dim == 0 { vec![Vec::new(); count] } else { flat.chunks(dim).map(<[i64]>::to_vec).collect() };
        let p = Polyhedron::newton(dim, &rows)?;
        write_out(out, Box::into_raw(Box::new(MvPolyhedron(p))), "out")
    })
}

/// # Safety
/// `p` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mv_polyhedron_free(p: *mut MvPolyhedron) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mv_polyhedron_dim(p: *const MvPolyhedron) -> usize {
    p.as_ref().map_or(0, |p| p.0.dim())
}

/// Lattice-normalized volume of a bounded polyhedron.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_polyhedron_volume(p: *const MvPolyhedron, out: *mut *mut c_char) -> MvStatus {
    rational_call(out, || Ok(polyhedron::lattice_volume(&reference(p, "p")?.0)?))
}

/// Pair of copies of `a` and `b`; the inputs stay owned by the caller.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_pair_new(a: *const MvPolyhedron, b: *const MvPolyhedron, out: *mut *mut MvPair) -> MvStatus {
    guard(|| {
        let pair = PolyhedronPair::new(reference(a, "a")?.0.clone(), reference(b, "b")?.0.clone())?;
        write_out(out, Box::into_raw(Box::new(MvPair(pair))), "out")
    })
}

/// # Safety
/// `p` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mv_pair_free(p: *mut MvPair) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `vol(A minus B) - vol(B minus A)`.
///
/// # Safety
/// `pair` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_pair_volume(pair: *const MvPair, out: *mut *mut c_char) -> MvStatus {
    rational_call(out, || Ok(mixed::pair_volume(&reference(pair, "pair")?.0)?))
}

/// Mixed volume of `count` pairs in dimension `count`.
///
/// # Safety
/// `pairs` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_mixed_volume_pairs(
    pairs: *const *const MvPair,
    count: usize,
    method: MvMethod,
    out: *mut *mut c_char,
) -> MvStatus {
    rational_call(out, || {
        let owned: Vec<PolyhedronPair> = handles(pairs, count, "pairs")?.into_iter().map(|p| p.0.clone()).collect();
        Ok(mixed::mixed_volume_pairs(&owned, method.into())?)
    })
}

/// Milnor number of a generic complete intersection with the given Newton
/// polyhedra.
///
/// # Safety
/// `newton` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_milnor_number(newton: *const *const MvPolyhedron, count: usize, out: *mut *mut c_char) -> MvStatus {
    rational_call(out, || {
        let owned: Vec<Polyhedron> = handles(newton, count, "newton")?.into_iter().map(|p| p.0.clone()).collect();
        Ok(invariants::milnor_number(&owned)?)
    })
}

/// Runs a problem file `{"command", "payload", "options"}`. On success and on
/// computation failures `out_json` receives the same JSON the command line
/// prints; after a null argument or an internal failure it receives null.
///
/// # Safety
/// `problem` must be a nul-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mv_run_json(problem: *const c_char, out_json: *mut *mut c_char) -> MvStatus {
    if out_json.is_null() {
        return guard(|| Err(Failure::Null("out_json")));
    }
    let mut rendered = None;
    let status = guard(|| {
        let v: serde_json::Value =
            serde_json::from_str(text(problem, "problem")?).map_err(|e| MixvolError::Schema(format!("invalid JSON: {e}")))?;
        let outcome = Problem::from_json(&v).and_then(|p| p.run());
        match outcome {
            Ok(report) => {
                rendered = Some(report.to_json());
                Ok(())
            }
            Err(e) => {
                rendered = Some(problem::error_json(&e));
                Err(e.into())
            }
        }
    });
    if status != MvStatus::NullArgument && status != MvStatus::Internal {
        let json = rendered.unwrap_or_else(|| {
            let msg = CStr::from_ptr(mv_last_error_message()).to_string_lossy().into_owned();
            problem::error_json(&MixvolError::Schema(msg))
        });
        out_json.write(c_string(json));
    } else {
        out_json.write(ptr::null_mut());
    }
    status
}
