//! C ABI for gmfineq.
//!
//! Matrices and specs are opaque heap handles created by `gmfineq_*_new`
//! style constructors and released with the matching `_free`. Every
//! fallible call returns a [`GmfStatus`]; on failure a message is kept per
//! thread and can be copied out with [`gmfineq_last_error_message`].
//! Strings handed back by the library are always written into
//! caller-provided buffers, so nothing returned needs to be freed except
//! the handles themselves.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gmfineq::error::Error;
use gmfineq::gmf::{gmf, gmf_tensor_oracle, GmfSpec};
use gmfineq::inequality::{finite_difference_f, slack_theorem_2_1, Verdict};
use gmfineq::linalg::PsdMatrix;
use gmfineq::matrix::{Matrix, C64};
use gmfineq::permchar::{GroupCharacter, GroupCharacterJson};
use gmfineq::search::reproduce;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    NotPsd = 5,
    DegreeTooLarge = 6,
    Numerical = 7,
    ReproductionFailed = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Verdict of a slack evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmfVerdict {
    Holds = 0,
    Violated = 1,
    Equality = 2,
}

/// Real part of a GMF value and the size of the discarded imaginary part.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GmfValue {
    pub value: f64,
    pub imag_residue: f64,
}

/// lhs − rhs of an inequality with its tolerance and verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GmfSlack {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: GmfVerdict,
}

/// Opaque square complex matrix.
pub struct GmfMatrix(Matrix);

/// Opaque generalized matrix function specification.
pub struct GmfSpecHandle(GmfSpec);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> GmfStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::BlockCountMismatch { .. } => {
            GmfStatus::DimensionMismatch
        }
        Error::NotHermitian(_) => GmfStatus::NotHermitian,
        Error::NotPsd(_) => GmfStatus::NotPsd,
        Error::DegreeTooLarge { .. } | Error::ResultTooLarge(_) | Error::GroupTooLarge { .. } => {
            GmfStatus::DegreeTooLarge
        }
        Error::ReproductionFailed { .. } => GmfStatus::ReproductionFailed,
        e if e.is_numerical() => GmfStatus::Numerical,
        _ => GmfStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (GmfStatus, String)>) -> GmfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            GmfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GmfStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (GmfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GmfStatus, String) {
    (GmfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (GmfStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn verdict(v: Verdict) -> GmfVerdict {
    match v {
        Verdict::Holds => GmfVerdict::Holds,
        Verdict::Violated => GmfVerdict::Violated,
        Verdict::Equality => GmfVerdict::Equality,
    }
}

/// Copies `s` plus a NUL terminator into `buf` when it fits; `required`
/// receives the length including the terminator either way.
unsafe fn write_string(
    s: &str,
    buf: *mut c_char,
    cap: usize,
    required: *mut usize,
) -> Result<(), (GmfStatus, String)> {
    let need = s.len() + 1;
    if !required.is_null() {
        *required = need;
    }
    if buf.is_null() || cap < need {
        return Err((
            GmfStatus::BufferTooSmall,
            format!("buffer of {cap} bytes, need {need}"),
        ));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Length in bytes, including the terminator, of this thread's last error
/// message; 1 when there is none.
#[no_mangle]
pub extern "C" fn gmfineq_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().len() + 1)
}

/// Copies this thread's last error message into `buf`.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_last_error_message(buf: *mut c_char, cap: usize) -> GmfStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    let need = msg.len() + 1;
    if buf.is_null() || cap < need {
        return GmfStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), msg.len());
    *buf.add(msg.len()) = 0;
    GmfStatus::Ok
}

/// Builds an n×n matrix from row-major real and imaginary parts; `im`
/// may be null for a real matrix.
///
/// # Safety
/// `re` (and `im` if non-null) must point to n·n doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_matrix_new(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut GmfMatrix,
) -> GmfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if re.is_null() {
            return Err(null("re"));
        }
        let len = n.checked_mul(n).ok_or_else(|| {
            (
                GmfStatus::InvalidArgument,
                format!("matrix size {n} overflows"),
            )
        })?;
        let re = std::slice::from_raw_parts(re, len);
        let im = (!im.is_null()).then(|| std::slice::from_raw_parts(im, len));
        if re
            .iter()
            .chain(im.into_iter().flatten())
            .any(|x| !x.is_finite())
        {
            return Err((GmfStatus::InvalidArgument, "non-finite matrix entry".into()));
        }
        let m = Matrix::from_fn(n, |i, j| {
            C64::new(re[i * n + j], im.map_or(0.0, |v| v[i * n + j]))
        });
        *out = Box::into_raw(Box::new(GmfMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from [`gmfineq_matrix_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_matrix_free(m: *mut GmfMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_matrix_dim(m: *const GmfMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

unsafe fn put_spec(out: *mut *mut GmfSpecHandle, spec: GmfSpec) -> Result<(), (GmfStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(GmfSpecHandle(spec)));
    Ok(())
}

fn positive(n: usize) -> Result<usize, (GmfStatus, String)> {
    if n == 0 {
        Err((GmfStatus::InvalidArgument, "degree must be >= 1".into()))
    } else {
        Ok(n)
    }
}

/// Determinant on n×n matrices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_det(n: usize, out: *mut *mut GmfSpecHandle) -> GmfStatus {
    guard(|| put_spec(out, GmfSpec::Det(positive(n)?)))
}

/// Permanent on n×n matrices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_per(n: usize, out: *mut *mut GmfSpecHandle) -> GmfStatus {
    guard(|| put_spec(out, GmfSpec::Per(positive(n)?)))
}

/// Cyclic group C_n generated by the n-cycle, with character index k.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_cyclic(
    n: usize,
    k: usize,
    out: *mut *mut GmfSpecHandle,
) -> GmfStatus {
    guard(|| put_spec(out, GmfSpec::cyclic(positive(n)?, k).map_err(lib_err)?))
}

/// Group and character from permutation-character JSON:
/// `{"n": .., "elements": [[..], ..], "character": [{"re": .., "im": ..}, ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_from_json(
    json: *const c_char,
    out: *mut *mut GmfSpecHandle,
) -> GmfStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (GmfStatus::InvalidArgument, e.to_string()))?;
        let parsed: GroupCharacterJson =
            serde_json::from_str(text).map_err(|e| lib_err(Error::Json(e)))?;
        let gc = GroupCharacter::from_json(parsed).map_err(lib_err)?;
        put_spec(out, GmfSpec::custom("json", gc))
    })
}

/// Product d_1(X_1)⋯d_k(X_k) of `count` non-product specs. The inputs are
/// copied and remain owned by the caller.
///
/// # Safety
/// `specs` must point to `count` live spec handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_product(
    specs: *const *const GmfSpecHandle,
    count: usize,
    out: *mut *mut GmfSpecHandle,
) -> GmfStatus {
    guard(|| {
        if specs.is_null() {
            return Err(null("specs"));
        }
        let blocks = std::slice::from_raw_parts(specs, count)
            .iter()
            .map(|&s| deref(s, "spec").map(|s| s.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        put_spec(out, GmfSpec::product(blocks).map_err(lib_err)?)
    })
}

/// # Safety
/// `s` must be null or a live spec handle.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_free(s: *mut GmfSpecHandle) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Matrix size the spec acts on (the sum of block sizes for products).
///
/// # Safety
/// `s` must be null or a live spec handle.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_spec_degree(s: *const GmfSpecHandle) -> usize {
    s.as_ref().map_or(0, |s| s.0.degree())
}

unsafe fn evaluate_with(
    spec: *const GmfSpecHandle,
    m: *const GmfMatrix,
    out: *mut GmfValue,
    f: fn(&GmfSpec, &Matrix) -> gmfineq::Result<gmfineq::GmfValue>,
) -> GmfStatus {
    guard(|| {
        let (spec, m) = (deref(spec, "spec")?, deref(m, "matrix")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let v = f(&spec.0, &m.0).map_err(lib_err)?;
        *out = GmfValue {
            value: v.value,
            imag_residue: v.imag_residue,
        };
        Ok(())
    })
}

/// d(A) with the fastest engine for the spec.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_evaluate(
    spec: *const GmfSpecHandle,
    m: *const GmfMatrix,
    out: *mut GmfValue,
) -> GmfStatus {
    evaluate_with(spec, m, out, gmf)
}

/// ⟨v, (⊗ⁿA) v⟩ for the spec's decomposable tensor v (degree ≤ 6).
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_tensor_oracle(
    spec: *const GmfSpecHandle,
    m: *const GmfMatrix,
    out: *mut GmfValue,
) -> GmfStatus {
    evaluate_with(spec, m, out, gmf_tensor_oracle)
}

/// d(A+B+C)^r + d(A)^r + d(B)^r + d(C)^r − d(A+B)^r − d(A+C)^r − d(B+C)^r
/// for PSD A, B, C.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_slack_three_matrix(
    spec: *const GmfSpecHandle,
    a: *const GmfMatrix,
    b: *const GmfMatrix,
    c: *const GmfMatrix,
    r: f64,
    out: *mut GmfSlack,
) -> GmfStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let psd = |m: *const GmfMatrix, what: &str| {
            PsdMatrix::new(deref(m, what)?.0.clone()).map_err(lib_err)
        };
        let (a, b, c) = (psd(a, "a")?, psd(b, "b")?, psd(c, "c")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let rep = slack_theorem_2_1(&spec.0, &a, &b, &c, r).map_err(lib_err)?;
        *out = GmfSlack {
            lhs: rep.lhs,
            rhs: rep.rhs,
            slack: rep.slack,
            tolerance: rep.tolerance,
            verdict: verdict(rep.verdict),
        };
        Ok(())
    })
}

/// Runs a named example ("eg2_2", "eg2_3", "finite_diff",
/// "majorization_gap") and writes its reports as JSON lines into `buf`.
/// `required` receives the needed size including the terminator, so a
/// first call with a null buffer can size the second.
///
/// # Safety
/// `example` must be NUL-terminated; `buf` must hold `cap` bytes or be null;
/// `required` may be null.
#[no_mangle]
pub unsafe extern "C" fn gmfineq_reproduce(
    example: *const c_char,
    buf: *mut c_char,
    cap: usize,
    required: *mut usize,
) -> GmfStatus {
    guard(|| {
        if example.is_null() {
            return Err(null("example"));
        }
        let id = CStr::from_ptr(example)
            .to_str()
            .map_err(|e| (GmfStatus::InvalidArgument, e.to_string()))?;
        let result = reproduce(id).map_err(lib_err)?;
        let mut text = String::new();
        for rep in &result.reports {
            text.push_str(&serde_json::to_string(rep).map_err(|e| lib_err(Error::Json(e)))?);
            text.push('\n');
        }
        write_string(&text, buf, cap, required)
    })
}

/// Σ_{j=1}^m (−1)^{m−j} C(m, j) j^r.
#[no_mangle]
pub extern "C" fn gmfineq_finite_difference(m: usize, r: f64) -> f64 {
    finite_difference_f(m, r)
}
