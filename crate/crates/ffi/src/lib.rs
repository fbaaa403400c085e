//! C interface to `wordmap`.
//!
//! Words and polynomials cross the boundary as opaque handles. Every fallible
//! call returns a [`WmStatus`]; on failure the message is available from
//! [`wm_last_error`] until the next call on the same thread. Strings returned
//! through `char **` are owned by the caller and released with
//! [`wm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use wordmap::sl2::{y_t, Mat2};
use wordmap::trace::{singular_sets, trace_polynomial};
use wordmap::variety::{sample_surface, solve_word_equation, SurfaceSpec};
use wordmap::{ComplexTriple, Error, FreeWord, TracePoly};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotInDerivedSubgroup = 4,
    SingularMatrix = 5,
    ConicViolation = 6,
    TraceMismatch = 7,
    ParabolicTrace = 8,
    ReduciblePair = 9,
    NotDivisible = 10,
    Degenerate = 11,
    Precondition = 12,
    Residual = 13,
    IdentityViolation = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WmComplex {
    pub re: f64,
    pub im: f64,
}

impl From<WmComplex> for Complex64 {
    fn from(z: WmComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for WmComplex {
    fn from(z: Complex64) -> Self {
        WmComplex { re: z.re, im: z.im }
    }
}

/// Opaque reduced word in the free group on `x`, `y`.
pub struct WmWord(FreeWord);

/// Opaque trace polynomial in `s`, `t`, `u` with integer coefficients.
pub struct WmPoly(TracePoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> WmStatus {
    match e {
        Error::Parse { .. } => WmStatus::Parse,
        Error::NotInDerivedSubgroup { .. } => WmStatus::NotInDerivedSubgroup,
        Error::SingularMatrix { .. } => WmStatus::SingularMatrix,
        Error::ConicViolation { .. } => WmStatus::ConicViolation,
        Error::TraceMismatch { .. } => WmStatus::TraceMismatch,
        Error::ParabolicTrace { .. } => WmStatus::ParabolicTrace,
        Error::ReduciblePair { .. } => WmStatus::ReduciblePair,
        Error::NotDivisible => WmStatus::NotDivisible,
        Error::Degenerate(_) => WmStatus::Degenerate,
        Error::Precondition(_) => WmStatus::Precondition,
        Error::Residual { .. } => WmStatus::Residual,
        Error::IdentityViolation(_) => WmStatus::IdentityViolation,
    }
}

struct Fail(WmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WmStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(WmStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WmStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(WmStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(WmStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(WmStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `wm_*` call on the same thread.
#[no_mangle]
pub extern "C" fn wm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word such as `x^2y^-1[x,y]` into a reduced word.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_word_parse(text: *const c_char, out: *mut *mut WmWord) -> WmStatus {
    guard(|| {
        let w = FreeWord::parse(read_str(text)?)?;
        write_out(out, WmWord(w))
    })
}

/// # Safety
/// `word` comes from `wm_word_parse` and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wm_word_free(word: *mut WmWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Canonical text of a word, e.g. `x^2y^-1`.
///
/// # Safety
/// `word` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_word_to_string(word: *const WmWord, out: *mut *mut c_char) -> WmStatus {
    guard(|| write_string(out, deref(word)?.0.to_string()))
}

/// Exponent sums of `x` and `y`.
///
/// # Safety
/// `word` is a live handle; `ex`, `ey` are writable.
#[no_mangle]
pub unsafe extern "C" fn wm_word_exponent_sums(word: *const WmWord, ex: *mut i64, ey: *mut i64) -> WmStatus {
    guard(|| {
        let ab = deref(word)?.0.abelianize();
        if ex.is_null() || ey.is_null() {
            return Err(Fail(WmStatus::NullPointer, "null output pointer".into()));
        }
        *ex = ab.ex;
        *ey = ab.ey;
        Ok(())
    })
}

/// The polynomial `P` with `tr w(x, y) = P(tr x, tr y, tr xy)`.
///
/// # Safety
/// `word` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_word_trace_poly(word: *const WmWord, out: *mut *mut WmPoly) -> WmStatus {
    guard(|| {
        let p = trace_polynomial(&deref(word)?.0);
        write_out(out, WmPoly(p))
    })
}

/// Parses a polynomial such as `s^2 + t^2 - s*t*u - 2`.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_poly_parse(text: *const c_char, out: *mut *mut WmPoly) -> WmStatus {
    guard(|| {
        let p: TracePoly = read_str(text)?.parse()?;
        write_out(out, WmPoly(p))
    })
}

/// # Safety
/// `poly` comes from this library and is not used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn wm_poly_free(poly: *mut WmPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_poly_to_string(poly: *const WmPoly, out: *mut *mut c_char) -> WmStatus {
    guard(|| write_string(out, deref(poly)?.0.to_string()))
}

/// JSON object `{"poly": text, "terms": [{"e": [i, j, k], "c": "coeff"}, ...]}`;
/// coefficients are decimal strings.
///
/// # Safety
/// `poly` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_poly_to_json(poly: *const WmPoly, out: *mut *mut c_char) -> WmStatus {
    guard(|| {
        let p = &deref(poly)?.0;
        let json = serde_json::json!({ "poly": p.to_string(), "terms": p });
        write_string(out, json.to_string())
    })
}

/// Evaluates at `(s, t, u)`.
///
/// # Safety
/// `poly` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_poly_eval(
    poly: *const WmPoly,
    s: WmComplex,
    t: WmComplex,
    u: WmComplex,
    out: *mut WmComplex,
) -> WmStatus {
    guard(|| {
        let p = deref(poly)?;
        if out.is_null() {
            return Err(Fail(WmStatus::NullPointer, "null output pointer".into()));
        }
        *out = p.0.eval(&ComplexTriple::new(s.into(), t.into(), u.into())).into();
        Ok(())
    })
}

/// Singular data of the `[x^n, y^m]` trace surfaces as a JSON object with
/// keys `A_n`, `A_m`, `B_nm`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_singular_sets_json(n: u32, m: u32, out: *mut *mut c_char) -> WmStatus {
    guard(|| {
        let data = singular_sets(n, m)?;
        write_string(out, serde_json::to_string(&data).expect("serializable"))
    })
}

/// Samples `count` points of `P_w = alpha` from `seed` and solves
/// `w(x, y) = g` over each. `g` is four row-major entries, or null for
/// `y_alpha`. The result is a JSON array of solution objects.
///
/// # Safety
/// `word` is a live handle; `g` is null or points to four values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wm_solve_json(
    word: *const WmWord,
    alpha: WmComplex,
    g: *const WmComplex,
    count: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> WmStatus {
    guard(|| {
        let alpha: Complex64 = alpha.into();
        let spec = SurfaceSpec::for_solver(deref(word)?.0.clone(), alpha)?;
        let target = if g.is_null() {
            y_t(alpha)
        } else {
            let e = std::slice::from_raw_parts(g, 4);
            Mat2::new(e[0].into(), e[1].into(), e[2].into(), e[3].into())
        };
        let pts = sample_surface(&spec, count as usize, seed)?;
        let sols = pts
            .iter()
            .map(|p| solve_word_equation(&spec, &target, p))
            .collect::<Result<Vec<_>, _>>()?;
        write_string(out, serde_json::to_string(&sols).expect("serializable"))
    })
}

/// Library version string; static, do not free.
#[no_mangle]
pub extern "C" fn wm_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version"),
    };
    VERSION.as_ptr()
}
