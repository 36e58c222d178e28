//! C ABI for the mgn-euler engine.
//!
//! The engine is an opaque [`MgnEngine`] handle. Every fallible call returns
//! an [`MgnStatus`] and writes results through out-parameters. Strings
//! handed out are NUL-terminated, owned by the caller and released with
//! [`mgn_string_free`]. The message of the most recent failure on the
//! calling thread is available from [`mgn_last_error`]. Panics never cross
//! the boundary; they surface as `MGN_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mgn_euler::arith::fmt_exact;
use mgn_euler::report::{render, run_verify, Cache, Engine, Format, Kind, Level, Route};
use mgn_euler::{Error, Windows};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    WindowExceeded = 3,
    NotInvertible = 4,
    NoConvergence = 5,
    NonIntegral = 6,
    Consistency = 7,
    Fixture = 8,
    Cache = 9,
    Io = 10,
    Panic = 11,
}

pub const MGN_KIND_CHI_OPEN: u32 = 0;
pub const MGN_KIND_CHI_BAR: u32 = 1;
pub const MGN_KIND_E_OPEN: u32 = 2;
pub const MGN_KIND_E_BAR: u32 = 3;

/// Selects the first route of the requested quantity.
pub const MGN_ROUTE_DEFAULT: u32 = 0;
pub const MGN_ROUTE_FORMULA: u32 = 1;
pub const MGN_ROUTE_GRAPHSUM: u32 = 2;
pub const MGN_ROUTE_WICK: u32 = 3;
pub const MGN_ROUTE_BRANCH_DATA: u32 = 4;
pub const MGN_ROUTE_DIRECT: u32 = 5;
pub const MGN_ROUTE_GENFUN: u32 = 6;

pub const MGN_FORMAT_CSV: u32 = 0;
pub const MGN_FORMAT_JSON: u32 = 1;
pub const MGN_FORMAT_MD: u32 = 2;

pub const MGN_VERIFY_QUICK: u32 = 0;
pub const MGN_VERIFY_FULL: u32 = 1;

/// Opaque engine handle.
pub struct MgnEngine {
    inner: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> MgnStatus {
    match e {
        Error::InvalidArgument(_) => MgnStatus::InvalidArgument,
        Error::WindowExceeded(_) => MgnStatus::WindowExceeded,
        Error::NotInvertible(_) => MgnStatus::NotInvertible,
        Error::NoConvergence(_) => MgnStatus::NoConvergence,
        Error::NonIntegral(_) => MgnStatus::NonIntegral,
        Error::Consistency(_) => MgnStatus::Consistency,
        Error::Fixture(_) => MgnStatus::Fixture,
        Error::Cache(_) => MgnStatus::Cache,
        Error::Io(_) | Error::Json(_) => MgnStatus::Io,
    }
}

struct Fail(MgnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MgnStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: String) -> Fail {
    Fail(MgnStatus::InvalidArgument, msg)
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MgnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MgnStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            MgnStatus::Panic
        }
    }
}

fn to_c(s: String) -> *mut c_char {
    // Report text never contains NUL; strip defensively rather than fail.
    CString::new(s.replace('\0', "")).expect("no interior NUL").into_raw()
}

/// # Safety
/// `e` must be null or a live handle from this library.
unsafe fn engine<'a>(e: *const MgnEngine) -> Result<&'a Engine, Fail> {
    e.as_ref().map(|h| &h.inner).ok_or_else(|| null("engine"))
}

/// # Safety
/// `out` must be null or valid for one pointer write.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn kind_of(k: u32) -> Result<Kind, Fail> {
    match k {
        MGN_KIND_CHI_OPEN => Ok(Kind::ChiOpen),
        MGN_KIND_CHI_BAR => Ok(Kind::ChiBar),
        MGN_KIND_E_OPEN => Ok(Kind::EOpen),
        MGN_KIND_E_BAR => Ok(Kind::EBar),
        _ => Err(invalid(format!("unknown kind {k}"))),
    }
}

fn route_of(kind: Kind, r: u32) -> Result<Route, Fail> {
    match r {
        MGN_ROUTE_DEFAULT => Ok(kind.default_route()),
        MGN_ROUTE_FORMULA => Ok(Route::Formula),
        MGN_ROUTE_GRAPHSUM => Ok(Route::Graphsum),
        MGN_ROUTE_WICK => Ok(Route::Wick),
        MGN_ROUTE_BRANCH_DATA => Ok(Route::BranchData),
        MGN_ROUTE_DIRECT => Ok(Route::Direct),
        MGN_ROUTE_GENFUN => Ok(Route::Genfun),
        _ => Err(invalid(format!("unknown route {r}"))),
    }
}

fn format_of(f: u32) -> Result<Format, Fail> {
    match f {
        MGN_FORMAT_CSV => Ok(Format::Csv),
        MGN_FORMAT_JSON => Ok(Format::Json),
        MGN_FORMAT_MD => Ok(Format::Md),
        _ => Err(invalid(format!("unknown format {f}"))),
    }
}

/// Engine version as a static string; never free it.
#[no_mangle]
pub extern "C" fn mgn_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"",
    };
    V.as_ptr()
}

/// Creates an engine with the default windows. Returns null only if
/// allocation panics.
#[no_mangle]
pub extern "C" fn mgn_engine_new() -> *mut MgnEngine {
    catch_unwind(|| Box::into_raw(Box::new(MgnEngine { inner: Engine::default() })))
        .unwrap_or(ptr::null_mut())
}

/// Creates an engine with explicit series windows.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn mgn_engine_new_with_windows(
    xmax: usize,
    hmax: usize,
    lmax: usize,
    ymax: usize,
    out: *mut *mut MgnEngine,
) -> MgnStatus {
    guard(|| {
        let w = Windows { xmax, hmax, lmax, ymax };
        put(out, Box::into_raw(Box::new(MgnEngine { inner: Engine::new(w) })))
    })
}

/// Releases an engine. Null is ignored.
///
/// # Safety
/// `e` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mgn_engine_free(e: *mut MgnEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Enables the on-disk result cache in `dir`, or disables it when `dir` is
/// null.
///
/// # Safety
/// `e` must be a live handle; `dir` null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mgn_engine_set_cache_dir(e: *mut MgnEngine, dir: *const c_char) -> MgnStatus {
    guard(|| {
        let h = e.as_mut().ok_or_else(|| null("engine"))?;
        h.inner.cache = if dir.is_null() {
            None
        } else {
            let d = CStr::from_ptr(dir).to_str().map_err(|e| invalid(e.to_string()))?;
            Some(Cache::new(d)?)
        };
        Ok(())
    })
}

/// Computes one quantity (`MGN_KIND_*`) by one route (`MGN_ROUTE_*`) and
/// writes its exact value (`"p/q"` or an integer) to `out`.
///
/// # Safety
/// `e` must be a live handle; `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn mgn_compute(
    e: *const MgnEngine,
    kind: u32,
    route: u32,
    g: u32,
    n: u32,
    out: *mut *mut c_char,
) -> MgnStatus {
    guard(|| {
        let eng = engine(e)?;
        let k = kind_of(kind)?;
        let v = eng.compute(k, g, n, route_of(k, route)?)?;
        put(out, to_c(fmt_exact(&v)))
    })
}

/// Computes one quantity by every route and writes a JSON report to `out`.
/// A disagreement between routes returns `MGN_STATUS_CONSISTENCY`.
///
/// # Safety
/// `e` must be a live handle; `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn mgn_compute_all_routes(
    e: *const MgnEngine,
    kind: u32,
    g: u32,
    n: u32,
    out: *mut *mut c_char,
) -> MgnStatus {
    guard(|| {
        let eng = engine(e)?;
        let k = kind_of(kind)?;
        let doc = eng.value_report(k, g, n, k.routes())?;
        put(out, to_c(render(&doc, Format::Json)?))
    })
}

/// Renders reference table 1 or 2 in a `MGN_FORMAT_*` and reports how many
/// cells differ from the embedded fixture.
///
/// # Safety
/// `e` must be a live handle; `out` and `diffs` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn mgn_table(
    e: *const MgnEngine,
    which: u32,
    format: u32,
    out: *mut *mut c_char,
    diffs: *mut usize,
) -> MgnStatus {
    guard(|| {
        let eng = engine(e)?;
        let fmt = format_of(format)?;
        if out.is_null() || diffs.is_null() {
            return Err(null("output pointer"));
        }
        let t = match which {
            1 => eng.table1()?,
            2 => eng.table2()?,
            _ => return Err(invalid(format!("unknown table {which}"))),
        };
        put(diffs, t.diffs.len())?;
        put(out, to_c(render(&t.doc, fmt)?))
    })
}

/// Runs the verification suite (`MGN_VERIFY_*`), writing the JSON report to
/// `out` and whether every check passed to `passed`.
///
/// # Safety
/// `e` must be a live handle; `out` and `passed` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn mgn_verify(
    e: *const MgnEngine,
    level: u32,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> MgnStatus {
    guard(|| {
        let eng = engine(e)?;
        let lvl = match level {
            MGN_VERIFY_QUICK => Level::Quick,
            MGN_VERIFY_FULL => Level::Full,
            _ => return Err(invalid(format!("unknown verify level {level}"))),
        };
        if out.is_null() || passed.is_null() {
            return Err(null("output pointer"));
        }
        let rep = run_verify(lvl, &eng.windows);
        put(passed, rep.ok())?;
        put(out, to_c(serde_json::to_string_pretty(&rep).map_err(Error::from)?))
    })
}

/// Message of the last failed call on this thread, or null. The caller owns
/// the returned string.
#[no_mangle]
pub extern "C" fn mgn_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone()).map_or(ptr::null_mut(), to_c)
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mgn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
