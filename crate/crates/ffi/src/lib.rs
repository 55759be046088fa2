//! C interface to `snarkforge`.
//!
//! Graphs are opaque `SnarkGraph` handles owned by the caller and released
//! with [`snark_graph_free`]. Every fallible function returns a
//! [`SnarkStatus`] and writes its result through an out pointer; on failure
//! [`snark_last_error_message`] describes what went wrong on this thread.
//! Strings returned by the library are released with [`snark_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use snarkforge::coloring::{find_coloring, resistance};
use snarkforge::connectivity::{cyclic_connectivity_at_least, Method};
use snarkforge::constructions::{build_h, build_j, build_m, build_n, build_y, build_z, petersen, GadgetWiring};
use snarkforge::flows::flow_resistance;
use snarkforge::io::{from_json, to_graph6, to_json};
use snarkforge::{Error, SemiGraph};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnarkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Format = 3,
    BudgetExceeded = 4,
    Construction = 5,
    Internal = 6,
}

/// Opaque graph handle.
pub struct SnarkGraph {
    inner: SemiGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SnarkStatus {
    match e {
        Error::Format(_) | Error::Json(_) => SnarkStatus::Format,
        Error::BudgetExceeded => SnarkStatus::BudgetExceeded,
        Error::Construction(_) | Error::Registry(_) => SnarkStatus::Construction,
        Error::Io(_) => SnarkStatus::Internal,
        _ => SnarkStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (SnarkStatus, String)>) -> SnarkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SnarkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SnarkStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (SnarkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SnarkStatus, String) {
    (SnarkStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `g` must be null or a live handle from this library.
unsafe fn graph<'a>(g: *const SnarkGraph) -> Result<&'a SemiGraph, (SnarkStatus, String)> {
    // SAFETY: guaranteed by the caller.
    unsafe { g.as_ref() }.map(|h| &h.inner).ok_or_else(|| null("graph"))
}

/// # Safety
/// `out` must be null or valid for a write.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (SnarkStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: non-null and valid for writes per the caller.
    unsafe { out.write(value) };
    Ok(())
}

fn into_handle(g: SemiGraph) -> *mut SnarkGraph {
    Box::into_raw(Box::new(SnarkGraph { inner: g }))
}

fn into_c_string(s: String) -> Result<*mut c_char, (SnarkStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (SnarkStatus::Internal, "string with interior nul".to_string()))
}

/// Builds `petersen`, `M`, `N`, `Z`, `Y` (level `index`), `H` (level
/// `index`) or `J` with the frozen wiring.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_build(name: *const c_char, index: u32, out: *mut *mut SnarkGraph) -> SnarkStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        // SAFETY: non-null, nul-terminated per the contract.
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| (SnarkStatus::InvalidArgument, "name is not UTF-8".to_string()))?;
        let w = GadgetWiring::frozen();
        let level = || {
            if index >= 1 {
                Ok(index as usize)
            } else {
                Err((SnarkStatus::InvalidArgument, "level must be at least 1".to_string()))
            }
        };
        let g = match name {
            "petersen" => petersen(),
            "M" => build_m(),
            "N" => build_n(),
            "Z" => build_z(),
            "Y" => build_y(level()?, &w).map_err(lib_err)?.graph,
            "H" => build_h(level()?, &w).map_err(lib_err)?.graph,
            "J" => build_j(&w).map_err(lib_err)?.graph,
            other => return Err((SnarkStatus::InvalidArgument, format!("unknown graph {other:?}"))),
        };
        // SAFETY: see contract.
        unsafe { write(out, into_handle(g)) }
    })
}

/// Parses the JSON graph format.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_graph_from_json(json: *const c_char, out: *mut *mut SnarkGraph) -> SnarkStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        // SAFETY: non-null, nul-terminated per the contract.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|_| (SnarkStatus::Format, "input is not UTF-8".to_string()))?;
        let g = from_json(text).map_err(lib_err)?;
        // SAFETY: see contract.
        unsafe { write(out, into_handle(g)) }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snark_graph_free(g: *mut SnarkGraph) {
    if !g.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_graph_order(g: *const SnarkGraph, out: *mut usize) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        unsafe { write(out, g.order()) }
    })
}

/// Canonical JSON; free the result with [`snark_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_graph_to_json(g: *const SnarkGraph, out: *mut *mut c_char) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        let s = into_c_string(to_json(g))?;
        unsafe { write(out, s) }
    })
}

/// graph6 (graphs without semi-edges only); free the result with
/// [`snark_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_graph_to_graph6(g: *const SnarkGraph, out: *mut *mut c_char) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        let s = into_c_string(to_graph6(g).map_err(lib_err)?)?;
        unsafe { write(out, s) }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn snark_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Whether the graph has a proper 3-edge-coloring.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_is_colorable(g: *const SnarkGraph, out: *mut bool) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        unsafe { write(out, find_coloring(g).is_some()) }
    })
}

/// Resistance, or -1 when it exceeds `budget`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_resistance(g: *const SnarkGraph, budget: u32, out: *mut i32) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        let r = resistance(g, budget, None).map_err(lib_err)?;
        unsafe { write(out, r.value.map_or(-1, |v| v as i32)) }
    })
}

/// Flow resistance, or -1 when it exceeds `budget`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_flow_resistance(g: *const SnarkGraph, budget: u32, out: *mut i32) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        let r = flow_resistance(g, budget, None, None).map_err(lib_err)?;
        unsafe { write(out, r.value.map_or(-1, |v| v as i32)) }
    })
}

/// Whether the graph is cyclically `k`-edge-connected (`k <= 5`).
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn snark_cyclically_k_connected(g: *const SnarkGraph, k: u32, out: *mut bool) -> SnarkStatus {
    guard(|| {
        // SAFETY: see contract.
        let g = unsafe { graph(g) }?;
        let r = cyclic_connectivity_at_least(g, k as usize, Method::Exhaustive).map_err(lib_err)?;
        unsafe { write(out, r.holds) }
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn snark_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
