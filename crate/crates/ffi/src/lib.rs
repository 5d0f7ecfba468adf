//! C ABI over `qtop-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json` or
//! `*_synthesize` and released by the matching `*_free`. Every fallible call
//! returns a [`QtopStatus`]; on failure [`qtop_last_error`] describes the
//! error for the calling thread. Strings returned through out-parameters are
//! owned by the caller and released with [`qtop_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qtop_core::enumerate::enumerate_topologies;
use qtop_core::finspace::{Closure, FinSpace, SpaceDoc};
use qtop_core::metrize::{ChainStrategy, MetricBundle, Premetric};
use qtop_core::monoid::{MonoidDoc, Side, TopMonoid};
use qtop_core::quniform::{BaseDoc, EntourageBase, RotundKind};
use qtop_core::suite::{run_suite, Scope, SuiteName, SuiteOptions};
use qtop_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtopStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a document that fails validation.
    InvalidInput = 3,
    /// Valid input outside what the operation supports.
    Unsupported = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// Which premetric of a bundle to read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtopPremetric {
    Plain = 0,
    Regularized = 1,
    Semiregularized = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtopRotund {
    Point = 0,
    Set = 1,
    Delta = 2,
    Full = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtopStrategy {
    Coarsest = 0,
    Finest = 1,
}

/// A dyadic rational `num / 2^exp`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QtopDyadic {
    pub num: u64,
    pub exp: u32,
}

pub struct QtopSpace(FinSpace);
pub struct QtopBase(EntourageBase);
pub struct QtopMonoid(TopMonoid);
pub struct QtopBundle(MetricBundle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(QtopStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_)
            | Error::Io(_)
            | Error::NotLatticeClosed { .. }
            | Error::MissingDiagonal(_)
            | Error::AxiomU1Violated(..)
            | Error::AxiomU2Violated(_)
            | Error::NotAssociative(..)
            | Error::UnitLawFails(_)
            | Error::MultiplicationDiscontinuous(..)
            | Error::BadTable(_)
            | Error::Predicate(_)
            | Error::UnknownSuite(_)
            | Error::EmptyList
            | Error::EmptySet
            | Error::EmptyCarrier
            | Error::NotIncreasing
            | Error::SizeMismatch(..) => QtopStatus::InvalidInput,
            Error::CarrierTooLarge(_)
            | Error::SubsetOutOfRange { .. }
            | Error::PointOutOfRange { .. }
            | Error::OutOfRange { .. }
            | Error::TooLarge { .. }
            | Error::ChainTooLong(_) => QtopStatus::OutOfRange,
            Error::TargetNotInUniformity
            | Error::NoHalving
            | Error::UnitKindUnsupported(_)
            | Error::NotABase(_)
            | Error::NotAGroup(_) => QtopStatus::Unsupported,
        };
        Fail(status, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(QtopStatus::InvalidInput, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QtopStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QtopStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QtopStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            QtopStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(QtopStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(QtopStatus::InvalidInput, e.to_string()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn free_box<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qtop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qtop_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qtop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n": .., "opens": [..]}`. With `strict` the family must already
/// be closed under unions and intersections.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_space_from_json(
    json: *const c_char,
    strict: bool,
    out: *mut *mut QtopSpace,
) -> QtopStatus {
    guard(|| {
        let doc: SpaceDoc = serde_json::from_str(str_arg(json, "json")?)?;
        let mode = if strict { Closure::Strict } else { Closure::Auto };
        let s = FinSpace::from_doc(&doc, mode)?;
        write_out(out, Box::into_raw(Box::new(QtopSpace(s))))
    })
}

/// # Safety
/// `space` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtop_space_free(space: *mut QtopSpace) {
    free_box(space)
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtop_space_size(space: *const QtopSpace) -> usize {
    space.as_ref().map_or(0, |s| s.0.n())
}

/// Separation flags as a JSON object.
///
/// # Safety
/// `space` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_space_classify_json(space: *const QtopSpace, out: *mut *mut c_char) -> QtopStatus {
    guard(|| {
        let s = handle(space, "space")?;
        write_string(out, serde_json::to_string(&s.0.classify())?)
    })
}

/// Number of labeled topologies on `n` points (`1 ≤ n ≤ 5`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_topology_count(n: usize, out: *mut usize) -> QtopStatus {
    guard(|| write_out(out, enumerate_topologies(n)?.len()))
}

/// Parses `{"n": .., "members": [..]}`. With `strict` the members must
/// already be in canonical order.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_base_from_json(json: *const c_char, strict: bool, out: *mut *mut QtopBase) -> QtopStatus {
    guard(|| {
        let doc: BaseDoc = serde_json::from_str(str_arg(json, "json")?)?;
        let b = EntourageBase::from_doc(&doc, strict)?;
        write_out(out, Box::into_raw(Box::new(QtopBase(b))))
    })
}

/// # Safety
/// `base` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtop_base_free(base: *mut QtopBase) {
    free_box(base)
}

/// Number of members in canonical order, or 0 for a null handle.
///
/// # Safety
/// `base` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtop_base_member_count(base: *const QtopBase) -> usize {
    base.as_ref().map_or(0, |b| b.0.members().len())
}

/// Rotundness of the multiplicative closure of the base in its induced
/// topology.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_base_is_rotund(base: *const QtopBase, kind: QtopRotund, out: *mut bool) -> QtopStatus {
    guard(|| {
        let b = handle(base, "base")?.0.saturate_mult();
        let k = match kind {
            QtopRotund::Point => RotundKind::Point,
            QtopRotund::Set => RotundKind::Set,
            QtopRotund::Delta => RotundKind::Delta,
            QtopRotund::Full => RotundKind::Full,
        };
        write_out(out, b.is_rotund(&b.induced_topology(), k)?)
    })
}

/// Builds the bundle for the base member at `member` in the induced
/// topology and runs its checks.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_bundle_synthesize(
    base: *const QtopBase,
    member: usize,
    strategy: QtopStrategy,
    out: *mut *mut QtopBundle,
) -> QtopStatus {
    guard(|| {
        let b = &handle(base, "base")?.0;
        let target = b.members().get(member).ok_or_else(|| {
            Fail(
                QtopStatus::OutOfRange,
                format!("member {member} out of range ({} members)", b.members().len()),
            )
        })?;
        let strategy = match strategy {
            QtopStrategy::Coarsest => ChainStrategy::Coarsest,
            QtopStrategy::Finest => ChainStrategy::Finest,
        };
        let bundle = MetricBundle::synthesize(b, None, target, strategy)?;
        write_out(out, Box::into_raw(Box::new(QtopBundle(bundle))))
    })
}

/// # Safety
/// `bundle` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtop_bundle_free(bundle: *mut QtopBundle) {
    free_box(bundle)
}

/// Whether every applicable check passed; false for a null handle.
///
/// # Safety
/// `bundle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtop_bundle_all_passed(bundle: *const QtopBundle) -> bool {
    bundle.as_ref().is_some_and(|b| b.0.all_passed())
}

/// The value `p(x, y)` of the selected premetric.
///
/// # Safety
/// `bundle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_bundle_distance(
    bundle: *const QtopBundle,
    which: QtopPremetric,
    x: usize,
    y: usize,
    out: *mut QtopDyadic,
) -> QtopStatus {
    guard(|| {
        let b = &handle(bundle, "bundle")?.0;
        let p: &Premetric = match which {
            QtopPremetric::Plain => &b.d,
            QtopPremetric::Regularized => &b.d_reg,
            QtopPremetric::Semiregularized => &b.d_semireg,
        };
        let n = p.n();
        if x >= n || y >= n {
            return Err(Fail(
                QtopStatus::OutOfRange,
                format!("({x}, {y}) outside a carrier of {n} points"),
            ));
        }
        let v = p.get(x, y);
        write_out(
            out,
            QtopDyadic {
                num: v.num(),
                exp: v.exp(),
            },
        )
    })
}

/// The whole bundle, checks included, as JSON.
///
/// # Safety
/// `bundle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_bundle_to_json(bundle: *const QtopBundle, out: *mut *mut c_char) -> QtopStatus {
    guard(|| {
        let b = handle(bundle, "bundle")?;
        write_string(out, serde_json::to_string(&b.0)?)
    })
}

/// Parses `{"space": .., "mul": [[..]], "unit": .., "unit_side": ..}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_monoid_from_json(
    json: *const c_char,
    strict: bool,
    out: *mut *mut QtopMonoid,
) -> QtopStatus {
    guard(|| {
        let doc: MonoidDoc = serde_json::from_str(str_arg(json, "json")?)?;
        let mode = if strict { Closure::Strict } else { Closure::Auto };
        let m = TopMonoid::from_doc(&doc, mode)?;
        write_out(out, Box::into_raw(Box::new(QtopMonoid(m))))
    })
}

/// # Safety
/// `monoid` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qtop_monoid_free(monoid: *mut QtopMonoid) {
    free_box(monoid)
}

/// Left (`left = true`) or right subinvariant bundle for the open unit
/// neighbourhood given by `points[0..len]`, as JSON.
///
/// # Safety
/// `monoid` must be a live handle, `points` must hold `len` readable
/// values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_monoid_synthesize_json(
    monoid: *const QtopMonoid,
    left: bool,
    points: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> QtopStatus {
    guard(|| {
        let m = &handle(monoid, "monoid")?.0;
        if points.is_null() && len > 0 {
            return Err(null("points"));
        }
        let pts = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(points, len)
        };
        let u = qtop_core::bits::from_points(m.n(), pts)?;
        let side = if left { Side::Left } else { Side::Right };
        let mb = m.synth_subinvariant(u, side, ChainStrategy::Coarsest)?;
        write_string(out, serde_json::to_string(&mb)?)
    })
}

/// Runs a suite (`claims`, `separations`, `monoids`, `rotund`) over a scope
/// (`catalog` or `enumerated:N`), writing the JSON report and whether it
/// passed.
///
/// # Safety
/// `name` and `scope` must be NUL-terminated strings; `out` and `passed`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtop_suite_run_json(
    name: *const c_char,
    scope: *const c_char,
    workers: usize,
    seed: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> QtopStatus {
    guard(|| {
        let name = SuiteName::parse(str_arg(name, "name")?)?;
        let scope = Scope::parse(str_arg(scope, "scope")?)?;
        let r = run_suite(
            name,
            scope,
            SuiteOptions {
                workers: workers.max(1),
                seed,
            },
        )?;
        write_out(passed, r.passed())?;
        write_string(out, serde_json::to_string(&r)?)
    })
}
