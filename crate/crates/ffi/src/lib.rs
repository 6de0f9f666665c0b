//! C interface to `fourier-positivity`.
//!
//! Functions and corpora are opaque handles owned by the caller and released
//! with the matching `*_free`. Every entry point returns an [`FposStatus`];
//! on failure [`fpos_last_error`] describes the error on the calling thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use fourier_positivity::basis::{
    classify, named, read_corpus, sample_corpus, write_corpus, BasisKind, CoefficientVector, Corpus, FourierPair1D,
    Label, RadialPair,
};
use fourier_positivity::bochner::{default_beta_grid, default_r_grid, detect_1d, detect_2d, PointPool};
use fourier_positivity::poisson::{detect_poisson_1d, detect_poisson_2d, CharScan1D, CharScan2D};
use fourier_positivity::specialfn::{min_eigenvalue, SymMatrix};
use fourier_positivity::verdict::{DetectorVerdict, Witness};
use fourier_positivity::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FposStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    WrongKind = 4,
    Degenerate = 5,
    NonFinite = 6,
    OutOfRange = 7,
    Parse = 8,
    Io = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FposBasis {
    Hermite1d = 0,
    LaguerreRadial = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FposLabel {
    PP = 0,
    PN = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FposWitnessKind {
    Toeplitz = 0,
    Points = 1,
    Char1d = 2,
    Char2d = 3,
}

/// One detector verdict. `size` is the matrix order or point count (0 for
/// Poisson scans); unused `coords` are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FposVerdict {
    pub detected: bool,
    pub witness: FposWitnessKind,
    pub size: usize,
    pub coords: [f64; 3],
    pub min_value: f64,
    pub threshold: f64,
}

/// A normalized coefficient vector in one of the two bases.
pub struct FposFunction {
    cv: CoefficientVector,
}

/// A labelled corpus.
pub struct FposCorpus {
    corpus: Corpus,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FposStatus {
    match e {
        Error::Domain(_) => FposStatus::Domain,
        Error::WrongKind { .. } => FposStatus::WrongKind,
        Error::NonFinite { .. } => FposStatus::NonFinite,
        Error::Degenerate(_) => FposStatus::Degenerate,
        Error::IndexOutOfRange { .. } => FposStatus::OutOfRange,
        Error::Corpus { .. } | Error::Verdicts { .. } | Error::Config(_) => FposStatus::Parse,
        Error::Io { .. } => FposStatus::Io,
        _ => FposStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FposStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FposStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            FposStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            FposStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            FposStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Arg(format!("{what} is not valid UTF-8")))
}

fn basis(kind: FposBasis) -> BasisKind {
    match kind {
        FposBasis::Hermite1d => BasisKind::Hermite1D,
        FposBasis::LaguerreRadial => BasisKind::LaguerreRadial,
    }
}

fn label(l: Label) -> FposLabel {
    match l {
        Label::PP => FposLabel::PP,
        Label::PN => FposLabel::PN,
    }
}

fn boxed(cv: CoefficientVector) -> *mut FposFunction {
    Box::into_raw(Box::new(FposFunction { cv }))
}

fn verdict(v: &DetectorVerdict) -> FposVerdict {
    let witness = match v.witness {
        Witness::Toeplitz { .. } => FposWitnessKind::Toeplitz,
        Witness::Points { .. } => FposWitnessKind::Points,
        Witness::Char1D { .. } => FposWitnessKind::Char1d,
        Witness::Char2D { .. } => FposWitnessKind::Char2d,
    };
    FposVerdict {
        detected: v.detected,
        witness,
        size: v.witness.size().unwrap_or(0),
        coords: v.witness.coords().map(|c| c.unwrap_or(f64::NAN)),
        min_value: v.min_value,
        threshold: v.threshold,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fpos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fpos_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Normalizes `len` coefficients into a new function (5 for Hermite, 9 for
/// Laguerre).
///
/// # Safety
/// `coeffs` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_new(
    kind: FposBasis,
    coeffs: *const f64,
    len: usize,
    out: *mut *mut FposFunction,
) -> FposStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        if coeffs.is_null() {
            return Err(Fail::Null("coeffs"));
        }
        let raw = std::slice::from_raw_parts(coeffs, len);
        *slot = boxed(CoefficientVector::normalized(basis(kind), raw)?);
        Ok(())
    })
}

/// One of `gaussian`, `hermite-pp`, `hermite-pn`, `laguerre-pp`, `laguerre-pn`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_named(name: *const c_char, out: *mut *mut FposFunction) -> FposStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        *slot = boxed(named::by_name(c_str(name, "name")?)?);
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_free(f: *mut FposFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_kind(f: *const FposFunction, out: *mut FposBasis) -> FposStatus {
    guard(|| {
        let f = deref(f, "function")?;
        *self::out(out, "out")? = match f.cv.kind() {
            BasisKind::Hermite1D => FposBasis::Hermite1d,
            BasisKind::LaguerreRadial => FposBasis::LaguerreRadial,
        };
        Ok(())
    })
}

/// Copies up to `cap` normalized coefficients into `buf`; `len` receives the
/// full count.
///
/// # Safety
/// `buf` must hold `cap` doubles (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn fpos_function_coeffs(
    f: *const FposFunction,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> FposStatus {
    guard(|| {
        let c = deref(f, "function")?.cv.coeffs();
        *self::out(len, "len")? = c.len();
        if cap > 0 {
            if buf.is_null() {
                return Err(Fail::Null("buf"));
            }
            let n = cap.min(c.len());
            std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&c[..n]);
        }
        Ok(())
    })
}

/// `ψ(x)`; `x` is the radius for radial functions.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_psi(f: *const FposFunction, x: f64, out: *mut f64) -> FposStatus {
    guard(|| {
        let cv = &deref(f, "function")?.cv;
        let v = match cv.kind() {
            BasisKind::Hermite1D => cv.hermite()?.psi(x),
            BasisKind::LaguerreRadial => fourier_positivity::basis::eval_psi_radial(cv, x)?,
        };
        *self::out(out, "out")? = v;
        Ok(())
    })
}

/// `φ(s)`, the analytic transform.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_phi(f: *const FposFunction, s: f64, out: *mut f64) -> FposStatus {
    guard(|| {
        let cv = &deref(f, "function")?.cv;
        let v = match cv.kind() {
            BasisKind::Hermite1D => cv.hermite()?.phi(s),
            BasisKind::LaguerreRadial => fourier_positivity::basis::eval_phi_radial(cv, s)?,
        };
        *self::out(out, "out")? = v;
        Ok(())
    })
}

/// Ground-truth label from the analytic `φ`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_function_classify(f: *const FposFunction, out: *mut FposLabel) -> FposStatus {
    guard(|| {
        let f = deref(f, "function")?;
        *self::out(out, "out")? = label(classify(&f.cv));
        Ok(())
    })
}

/// Bochner test at the default grid. `size` is the Toeplitz order (1-D) or
/// the point count (radial, pool drawn from `pool_seed`).
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_detect_bochner(
    f: *const FposFunction,
    size: usize,
    pool_seed: u64,
    out: *mut FposVerdict,
) -> FposStatus {
    guard(|| {
        let cv = &deref(f, "function")?.cv;
        let slot = self::out(out, "out")?;
        let v = match cv.kind() {
            BasisKind::Hermite1D => {
                let h = cv.hermite()?;
                detect_1d(|r| h.psi(r), size, &default_r_grid())?
            }
            BasisKind::LaguerreRadial => {
                let l = cv.laguerre()?;
                detect_2d(|x| l.psi(x), &PointPool::new(pool_seed), size, &default_beta_grid())?
            }
        };
        *slot = verdict(&v);
        Ok(())
    })
}

/// Characteristic-function scan at the default grid.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_detect_poisson(f: *const FposFunction, out: *mut FposVerdict) -> FposStatus {
    guard(|| {
        let cv = &deref(f, "function")?.cv;
        let slot = self::out(out, "out")?;
        let v = match cv.kind() {
            BasisKind::Hermite1D => {
                let h = cv.hermite()?;
                detect_poisson_1d(|r| h.psi(r), &CharScan1D::default())?
            }
            BasisKind::LaguerreRadial => {
                let l = cv.laguerre()?;
                detect_poisson_2d(|x| l.psi(x), &CharScan2D::default())?
            }
        };
        *slot = verdict(&v);
        Ok(())
    })
}

/// Smallest eigenvalue of a symmetric row-major `order × order` matrix.
///
/// # Safety
/// `matrix` must point to `order * order` readable doubles and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_min_eigenvalue(matrix: *const f64, order: usize, out: *mut f64) -> FposStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        if matrix.is_null() {
            return Err(Fail::Null("matrix"));
        }
        let n2 = order.checked_mul(order).ok_or_else(|| Fail::Arg("matrix order overflows".into()))?;
        let a = std::slice::from_raw_parts(matrix, n2);
        for i in 0..order {
            for j in 0..i {
                if a[i * order + j] != a[j * order + i] {
                    return Err(Fail::Arg(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        let m = SymMatrix::from_fn(order, |i, j| a[i * order + j])?;
        *slot = min_eigenvalue(&m)?;
        Ok(())
    })
}

/// Samples `n` accepted functions from master seed `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_generate(
    kind: FposBasis,
    n: usize,
    seed: u64,
    out: *mut *mut FposCorpus,
) -> FposStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let corpus = sample_corpus(basis(kind), n, seed);
        *slot = Box::into_raw(Box::new(FposCorpus { corpus }));
        Ok(())
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_read(path: *const c_char, out: *mut *mut FposCorpus) -> FposStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let corpus = read_corpus(Path::new(c_str(path, "path")?))?;
        *slot = Box::into_raw(Box::new(FposCorpus { corpus }));
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_write(c: *const FposCorpus, path: *const c_char) -> FposStatus {
    guard(|| {
        let c = deref(c, "corpus")?;
        write_corpus(&c.corpus, Path::new(c_str(path, "path")?))?;
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_len(c: *const FposCorpus, out: *mut usize) -> FposStatus {
    guard(|| {
        *self::out(out, "out")? = deref(c, "corpus")?.corpus.len();
        Ok(())
    })
}

/// Copies function `index` into a new handle; `label` may be NULL.
///
/// # Safety
/// `c` must be a live handle, `out` writable, `label` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_get(
    c: *const FposCorpus,
    index: usize,
    out: *mut *mut FposFunction,
    label_out: *mut FposLabel,
) -> FposStatus {
    guard(|| {
        let c = &deref(c, "corpus")?.corpus;
        let slot = self::out(out, "out")?;
        let f = c.functions.get(index).ok_or(Error::IndexOutOfRange { index, len: c.len() })?;
        if let Some(l) = label_out.as_mut() {
            *l = label(f.label);
        }
        *slot = boxed(f.cv.clone());
        Ok(())
    })
}

/// # Safety
/// `c` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpos_corpus_free(c: *mut FposCorpus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
