//! C interface to `regloc`.
//!
//! Objects are opaque handles created by `rl_*_parse` / `rl_*` constructors
//! and released with the matching `rl_*_free`. Every fallible call returns
//! an [`RlStatus`]; on failure `rl_last_error()` describes the problem until
//! the next call on the same thread. Strings returned through `char **`
//! belong to the caller and are released with `rl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use regloc::certcheck::json::{from_json_str, to_json_string};
use regloc::certcheck::{check_certificate, Certificate};
use regloc::genesis::{build_generator, certify_module, GeneratorResult, PrimeHints};
use regloc::homalg::text::parse_module;
use regloc::homalg::{PresentedModule, QuotientRing};
use regloc::loci::{nonperf_locus, singular_locus, ClosedLocus};
use regloc::polyring::parse::parse_ideal_list;
use regloc::polyring::Limits;
use regloc::Error;

/// Status codes. The first four match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    Cutoff = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

pub struct RlRing {
    inner: Arc<QuotientRing>,
}

pub struct RlModule {
    inner: PresentedModule,
}

pub struct RlLocus {
    inner: ClosedLocus,
}

pub struct RlGenerator {
    inner: GeneratorResult,
}

pub struct RlCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RlStatus {
    match e {
        Error::Cutoff(_) => RlStatus::Cutoff,
        Error::Verification(_) => RlStatus::VerificationFailed,
        _ => RlStatus::InputError,
    }
}

struct Fail(RlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(RlStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(RlStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(RlStatus::InputError, "string contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_value<T: Copy>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(RlStatus::NullPointer, "null output pointer".into()));
    }
    *out = v;
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next `rl_*` call on the same thread.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `K[vars]/(g1,...)`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_parse(src: *const c_char, out: *mut *mut RlRing) -> RlStatus {
    guard(|| {
        let r = QuotientRing::parse(text(src)?)?;
        put(out, RlRing { inner: r })
    })
}

/// # Safety
/// `ring` must come from `rl_ring_parse` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_free(ring: *mut RlRing) {
    free(ring)
}

/// Krull dimension.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_ring_dim(ring: *const RlRing, out: *mut i64) -> RlStatus {
    guard(|| put_value(out, handle(ring)?.inner.dim()))
}

/// Parses one `module NAME over RING gens K relations [...]` definition.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rl_module_parse(src: *const c_char, out: *mut *mut RlModule) -> RlStatus {
    guard(|| {
        let (_, m) = parse_module(text(src)?)?;
        put(out, RlModule { inner: m })
    })
}

/// # Safety
/// `module` must come from `rl_module_parse` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_module_free(module: *mut RlModule) {
    free(module)
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_singular_locus(ring: *const RlRing, out: *mut *mut RlLocus) -> RlStatus {
    guard(|| {
        let l = singular_locus(&handle(ring)?.inner)?;
        put(out, RlLocus { inner: l })
    })
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_nonperf_locus(module: *const RlModule, out: *mut *mut RlLocus) -> RlStatus {
    guard(|| {
        let l = nonperf_locus(&handle(module)?.inner)?;
        put(out, RlLocus { inner: l })
    })
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_locus_is_empty(locus: *const RlLocus, out: *mut bool) -> RlStatus {
    guard(|| put_value(out, handle(locus)?.inner.is_empty()?))
}

/// Whether `a ⊆ b` as closed sets.
///
/// # Safety
/// Valid handles and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_locus_contained_in(a: *const RlLocus, b: *const RlLocus, out: *mut bool) -> RlStatus {
    guard(|| put_value(out, handle(b)?.inner.contains(&handle(a)?.inner)?))
}

/// Generators of the defining ideal, comma separated.
///
/// # Safety
/// Valid handle and output pointer; free the string with `rl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rl_locus_to_string(locus: *const RlLocus, out: *mut *mut c_char) -> RlStatus {
    guard(|| put_string(out, handle(locus)?.inner.defining_strings().join(", ")))
}

/// # Safety
/// `locus` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_locus_free(locus: *mut RlLocus) {
    free(locus)
}

/// Builds the generator of `mod R`. `primes` is NULL or a list like
/// `"(x);(y)"` of the minimal primes of `R`.
///
/// # Safety
/// Valid handle, optional NUL-terminated string, writable output.
#[no_mangle]
pub unsafe extern "C" fn rl_generator_build(
    ring: *const RlRing,
    primes: *const c_char,
    out: *mut *mut RlGenerator,
) -> RlStatus {
    guard(|| {
        let r = &handle(ring)?.inner;
        let hints = if primes.is_null() {
            PrimeHints::new()
        } else {
            PrimeHints::new().with(r, parse_ideal_list(r.ambient(), text(primes)?)?)
        };
        let g = build_generator(r, &hints)?;
        put(out, RlGenerator { inner: g })
    })
}

/// Number of summands of the generator.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_generator_summand_count(g: *const RlGenerator, out: *mut usize) -> RlStatus {
    guard(|| put_value(out, handle(g)?.inner.summands().len()))
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_generator_depth(g: *const RlGenerator, out: *mut usize) -> RlStatus {
    guard(|| put_value(out, handle(g)?.inner.depth))
}

/// # Safety
/// `g` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_generator_free(g: *mut RlGenerator) {
    free(g)
}

/// Certificate that `module` lies in the thick closure of `g`.
///
/// # Safety
/// Valid handles and output pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_certify(
    module: *const RlModule,
    g: *const RlGenerator,
    out: *mut *mut RlCertificate,
) -> RlStatus {
    guard(|| {
        let c = certify_module(&handle(module)?.inner, &handle(g)?.inner)?;
        put(out, RlCertificate { inner: c })
    })
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rl_certificate_from_json(src: *const c_char, out: *mut *mut RlCertificate) -> RlStatus {
    guard(|| {
        let c = from_json_str(text(src)?, Limits::default())?;
        put(out, RlCertificate { inner: c })
    })
}

/// # Safety
/// Valid handle and output pointer; free the string with `rl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rl_certificate_to_json(c: *const RlCertificate, out: *mut *mut c_char) -> RlStatus {
    guard(|| put_string(out, to_json_string(&handle(c)?.inner)))
}

/// Re-verifies a certificate. Returns `RL_STATUS_VERIFICATION_FAILED` when a
/// step fails; `fail_step` (may be NULL) receives its index, or -1.
///
/// # Safety
/// Valid handle; `fail_step` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_certificate_check(c: *const RlCertificate, fail_step: *mut i64) -> RlStatus {
    guard(|| {
        let v = check_certificate(&handle(c)?.inner)?;
        if !fail_step.is_null() {
            *fail_step = v.fail_step.map_or(-1, |s| s as i64);
        }
        if v.ok {
            Ok(())
        } else {
            Err(Fail(RlStatus::VerificationFailed, v.reason.unwrap_or_default()))
        }
    })
}

/// # Safety
/// `c` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn rl_certificate_free(c: *mut RlCertificate) {
    free(c)
}
