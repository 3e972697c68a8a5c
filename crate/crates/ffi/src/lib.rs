//! C ABI over `isocrystal-lab`.
//!
//! Newton polygons are exposed as an opaque handle; everything else is
//! reachable through [`isolab_run`], which takes a command line as a JSON
//! array and returns what the `isocrystal-lab` binary would print.
//!
//! Every fallible function returns an [`IsolabStatus`]. On failure the
//! message is kept per thread and can be read with
//! [`isolab_last_error_message`]. Strings returned by the library must be
//! released with [`isolab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isocrystal_lab::np::{Comparison, NewtonPolygon};
use isocrystal_lab::{Error, ErrorKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsolabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    Precision = 4,
    Unsupported = 5,
    Panic = 6,
}

/// Outcome of comparing two polygons in the specialization order, where
/// `a ≺ b` means that `b` lies on or below `a`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsolabOrder {
    Equal = 0,
    Precedes = 1,
    Follows = 2,
    Incomparable = 3,
    DifferentEndpoints = 4,
}

/// Opaque Newton polygon.
pub struct IsolabPolygon(NewtonPolygon);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: IsolabStatus, msg: impl Into<String>) -> IsolabStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> IsolabStatus {
    let status = match e.kind() {
        ErrorKind::Precision => IsolabStatus::Precision,
        ErrorKind::Unsupported => IsolabStatus::Unsupported,
        _ => IsolabStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> IsolabStatus) -> IsolabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IsolabStatus::Panic, "internal panic"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, IsolabStatus> {
    if s.is_null() {
        return Err(fail(IsolabStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(IsolabStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `poly` must be null or a live handle.
unsafe fn polygon<'a>(poly: *const IsolabPolygon) -> Result<&'a NewtonPolygon, IsolabStatus> {
    poly.as_ref()
        .map(|p| &p.0)
        .ok_or_else(|| fail(IsolabStatus::NullPointer, "null polygon handle"))
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn isolab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isolab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polygon such as `"2*(1,0)+(2,1)"` into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_parse(text: *const c_char, out: *mut *mut IsolabPolygon) -> IsolabStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsolabStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<NewtonPolygon>() {
            Ok(p) => {
                *out = Box::into_raw(Box::new(IsolabPolygon(p)));
                IsolabStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a polygon handle.
///
/// # Safety
/// `poly` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_free(poly: *mut IsolabPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
unsafe fn query_u64(
    poly: *const IsolabPolygon,
    out: *mut u64,
    f: impl FnOnce(&NewtonPolygon) -> Result<u64, Error>,
) -> IsolabStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsolabStatus::NullPointer, "null output pointer");
        }
        match polygon(poly) {
            Ok(p) => match f(p) {
                Ok(v) => {
                    *out = v;
                    IsolabStatus::Ok
                }
                Err(e) => from_error(&e),
            },
            Err(s) => s,
        }
    })
}

/// Height `h`, the x-coordinate of the endpoint.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_height(poly: *const IsolabPolygon, out: *mut u64) -> IsolabStatus {
    query_u64(poly, out, |p| Ok(p.height().into()))
}

/// Dimension `d`, the y-coordinate of the endpoint.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_dimension(poly: *const IsolabPolygon, out: *mut u64) -> IsolabStatus {
    query_u64(poly, out, |p| Ok(p.dim().into()))
}

/// Dimension of the open stratum of the polygon.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_dim(poly: *const IsolabPolygon, out: *mut u64) -> IsolabStatus {
    query_u64(poly, out, |p| Ok(p.dim_count() as u64))
}

/// Dimension of the stratum in the principally polarized moduli space;
/// fails for non-symmetric polygons.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_sdim(poly: *const IsolabPolygon, out: *mut u64) -> IsolabStatus {
    query_u64(poly, out, |p| p.sdim().map(|v| v as u64))
}

/// Multiplicity of slope 0.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_p_rank(poly: *const IsolabPolygon, out: *mut u64) -> IsolabStatus {
    query_u64(poly, out, |p| Ok(p.p_rank().into()))
}

/// The dual polygon as a new handle.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_dual(poly: *const IsolabPolygon, out: *mut *mut IsolabPolygon) -> IsolabStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsolabStatus::NullPointer, "null output pointer");
        }
        match polygon(poly) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(IsolabPolygon(p.dual())));
                IsolabStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Compares `a` with `b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_compare(
    a: *const IsolabPolygon,
    b: *const IsolabPolygon,
    out: *mut IsolabOrder,
) -> IsolabStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsolabStatus::NullPointer, "null output pointer");
        }
        let (a, b) = match (polygon(a), polygon(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        *out = match a.compare(b) {
            Comparison::Equal => IsolabOrder::Equal,
            // b on or below a.
            Comparison::AAboveB => IsolabOrder::Precedes,
            Comparison::ABelowB => IsolabOrder::Follows,
            Comparison::Incomparable => IsolabOrder::Incomparable,
            Comparison::DifferentEndpoints => IsolabOrder::DifferentEndpoints,
        };
        IsolabStatus::Ok
    })
}

/// Canonical text of the polygon; free with [`isolab_string_free`].
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isolab_polygon_to_string(poly: *const IsolabPolygon) -> *mut c_char {
    match polygon(poly) {
        Ok(p) => into_c_string(p.to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// Runs the command line given as a JSON array of strings (without the
/// program name), e.g. `["np","dim","--pairs","(2,1)"]`. Standard output and
/// standard error are returned as new strings and `exit_code` receives the
/// exit status the binary would have. The status is `Ok` whenever the
/// command ran, whatever its exit code.
///
/// # Safety
/// `argv_json` must be a NUL-terminated string; the three output pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn isolab_run(
    argv_json: *const c_char,
    exit_code: *mut i32,
    stdout_out: *mut *mut c_char,
    stderr_out: *mut *mut c_char,
) -> IsolabStatus {
    guard(|| {
        if exit_code.is_null() || stdout_out.is_null() || stderr_out.is_null() {
            return fail(IsolabStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(argv_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let words: Vec<String> = match serde_json::from_str(text) {
            Ok(w) => w,
            Err(e) => {
                return fail(
                    IsolabStatus::Validation,
                    format!("argv must be a JSON array of strings: {e}"),
                )
            }
        };
        let mut args = vec!["isocrystal-lab".to_string()];
        args.extend(words);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = isocrystal_lab::cli::run(&args, &mut std::io::empty(), &mut out, &mut err);
        *exit_code = code;
        *stdout_out = into_c_string(String::from_utf8_lossy(&out).into_owned());
        *stderr_out = into_c_string(String::from_utf8_lossy(&err).into_owned());
        IsolabStatus::Ok
    })
}
