//! C interface to `plane3c`.
//!
//! Graphs cross the boundary as opaque [`P3cGraph`] handles. Every fallible
//! call returns a [`P3cStatus`]; on failure the message is available from
//! [`p3c_last_error`] until the next call on the same thread. Strings handed
//! out by the library are released with [`p3c_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plane3c::colorer::{
    boundary_status, color_proof_guided, extend_backtrack, extension_check, BoundaryStatus,
    ColorError, Coloring,
};
use plane3c::generate::{generate, Spec};
use plane3c::plane_graph::text::{parse, print};
use plane3c::structures::class_violation;
use plane3c::{discharging, PlaneGraph};

/// Result of a library call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P3cStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Generate = 4,
    InvalidColoring = 5,
    Precondition = 6,
    Unextendable = 7,
    Refuted = 8,
    Internal = 9,
}

/// Coloring method for [`p3c_color`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P3cMethod {
    /// Exhaustive backtracking.
    Oracle = 0,
    /// Reduction-guided coloring; needs a good outer boundary.
    Proof = 1,
    /// `Proof` when its precondition holds, otherwise `Oracle`.
    Auto = 2,
}

/// Opaque graph handle.
pub struct P3cGraph(PlaneGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(P3cStatus, String);

impl Failure {
    fn new(status: P3cStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records its error message and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> P3cStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            P3cStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("panic inside plane3c".into()));
            P3cStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(
            P3cStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::new(P3cStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn graph<'a>(g: *const P3cGraph) -> Result<&'a PlaneGraph, Failure> {
    g.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure::new(P3cStatus::NullArgument, "graph handle is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            P3cStatus::NullArgument,
            "output pointer is null",
        ));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

fn handle(g: PlaneGraph) -> *mut P3cGraph {
    Box::into_raw(Box::new(P3cGraph(g)))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn p3c_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn p3c_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text format into a new graph.
///
/// # Safety
/// `input` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_graph_parse(
    input: *const c_char,
    out: *mut *mut P3cGraph,
) -> P3cStatus {
    guard(|| {
        let s = text(input, "input")?;
        let g = parse(s).map_err(|e| Failure::new(P3cStatus::Parse, e))?;
        write(out, handle(g))
    })
}

/// Builds a graph from a generator spec such as `"g1"`, `"cycle 9"` or
/// `"random-class 7 18"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_graph_generate(
    spec: *const c_char,
    out: *mut *mut P3cGraph,
) -> P3cStatus {
    guard(|| {
        let s = text(spec, "spec")?;
        let spec: Spec = s
            .parse()
            .map_err(|e| Failure::new(P3cStatus::Generate, e))?;
        let g = generate(spec).map_err(|e| Failure::new(P3cStatus::Generate, e))?;
        write(out, handle(g))
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn p3c_graph_free(g: *mut P3cGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex, edge and face counts. Any output may be null.
///
/// # Safety
/// `g` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_graph_counts(
    g: *const P3cGraph,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        for (out, n) in [
            (vertices, g.vertex_count()),
            (edges, g.edge_count()),
            (faces, g.faces().len()),
        ] {
            if !out.is_null() {
                out.write(n);
            }
        }
        Ok(())
    })
}

/// Prints the graph in the text format.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_graph_to_text(g: *const P3cGraph, out: *mut *mut c_char) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        write(out, owned(print(g)))
    })
}

/// Writes whether the graph lies in the class. When it does not and
/// `reason` is non-null, a description of the first violation is written
/// there; otherwise `*reason` is set to null.
///
/// # Safety
/// `g` must be a live handle, `in_class` writable and `reason` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_class_check(
    g: *const P3cGraph,
    in_class: *mut bool,
    reason: *mut *mut c_char,
) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        let v = class_violation(g);
        write(in_class, v.is_none())?;
        if !reason.is_null() {
            reason.write(v.map_or(ptr::null_mut(), |v| owned(v.to_string())));
        }
        Ok(())
    })
}

/// Runs the discharging audit. `ok` is true when charge is conserved and
/// no element other than the outer face ends negative. `report`, if
/// non-null, receives the full text report.
///
/// # Safety
/// `g` must be a live handle, `ok` writable and `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_discharge(
    g: *const P3cGraph,
    ok: *mut bool,
    report: *mut *mut c_char,
) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        let r = discharging::audit(g);
        write(ok, r.sum_ok && r.negatives.is_empty())?;
        if !report.is_null() {
            report.write(owned(r.to_string()));
        }
        Ok(())
    })
}

/// Extends `precoloring` (text lines `v=c`; null means none) to a proper
/// 3-coloring. On success `out` receives the coloring in the same format.
/// Returns `Unextendable` when no extension exists.
///
/// # Safety
/// `g` must be a live handle, `precoloring` null or nul-terminated, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_color(
    g: *const P3cGraph,
    precoloring: *const c_char,
    method: P3cMethod,
    out: *mut *mut c_char,
) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        if out.is_null() {
            return Err(Failure::new(
                P3cStatus::NullArgument,
                "output pointer is null",
            ));
        }
        let phi: Coloring = if precoloring.is_null() {
            Coloring::new()
        } else {
            text(precoloring, "precoloring")?
                .parse()
                .map_err(|e| Failure::new(P3cStatus::Parse, e))?
        };
        let proof = match method {
            P3cMethod::Oracle => false,
            P3cMethod::Proof => true,
            P3cMethod::Auto => {
                boundary_status(g) == BoundaryStatus::Good
                    && phi.iter().all(|(v, _)| g.is_external(v))
            }
        };
        let found = if proof {
            color_proof_guided(g, &phi).map(|(c, _)| Some(c))
        } else {
            extend_backtrack(g, &phi)
        };
        match found.map_err(color_failure)? {
            Some(c) => write(out, owned(c.to_string())),
            None => Err(Failure::new(
                P3cStatus::Unextendable,
                "precoloring does not extend",
            )),
        }
    })
}

fn color_failure(e: ColorError) -> Failure {
    let status = match &e {
        ColorError::Improper(..)
        | ColorError::UnknownVertex(_)
        | ColorError::BadColor(_)
        | ColorError::OffBoundary(_) => P3cStatus::InvalidColoring,
        ColorError::Precondition(_) => P3cStatus::Precondition,
        ColorError::Unextendable => P3cStatus::Unextendable,
        ColorError::Refuted(_) => P3cStatus::Refuted,
        ColorError::Parse { .. } => P3cStatus::Parse,
        ColorError::Internal(_) => P3cStatus::Internal,
    };
    Failure::new(status, e)
}

/// Checks every boundary coloring of a good outer cycle for an extension.
/// Writes the number of colorings checked and of those that failed. A
/// boundary that is not a good cycle gives `Precondition`.
///
/// # Safety
/// `g` must be a live handle; `checked` and `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn p3c_extension_check(
    g: *const P3cGraph,
    checked: *mut usize,
    violations: *mut usize,
) -> P3cStatus {
    guard(|| {
        let g = graph(g)?;
        let r = extension_check(g);
        if r.status != BoundaryStatus::Good {
            return Err(Failure::new(
                P3cStatus::Precondition,
                format!("boundary is {}", r.status),
            ));
        }
        write(checked, r.checked)?;
        write(violations, r.violations.len())
    })
}
