//! C ABI over the hatguess library.
//!
//! Graphs are opaque handles created by the `hg_graph_from_*` functions and
//! released with [`hg_graph_free`]. Strings returned through out-parameters
//! are owned by the caller and released with [`hg_string_free`]. Every
//! fallible call returns an [`HgStatus`]; on failure [`hg_last_error`]
//! describes it.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use hatguess::game::{self, ColorLists};
use hatguess::{Budget, Graph, HatError};

/// Status codes. The nonzero library codes match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    /// A search exceeded its node or time budget.
    Budget = 2,
    /// Malformed input or a violated precondition.
    Input = 3,
    /// An internal claim check failed.
    ClaimViolation = 4,
    /// A required pointer argument was null.
    NullArgument = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// An undirected simple graph.
pub struct HgGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Hat(HatError),
    Null(&'static str),
    Text(String),
}

impl From<HatError> for Fail {
    fn from(e: HatError) -> Self {
        Fail::Hat(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HgStatus::Ok
        }
        Ok(Err(Fail::Hat(e))) => {
            set_error(&e.to_string());
            match e.exit_code() {
                2 => HgStatus::Budget,
                4 => HgStatus::ClaimViolation,
                _ => HgStatus::Input,
            }
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("{what} is null"));
            HgStatus::NullArgument
        }
        Ok(Err(Fail::Text(msg))) => {
            set_error(&msg);
            HgStatus::Input
        }
        Err(_) => {
            set_error("panic inside the library");
            HgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Text(format!("{what} is not UTF-8")))
}

unsafe fn graph<'a>(g: *const HgGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or(Fail::Null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn budget(max_nodes: u64) -> Budget {
    if max_nodes == 0 {
        Budget::default()
    } else {
        Budget::new(max_nodes, Some(Duration::from_secs(Budget::DEFAULT_SECS)))
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph6 string.
///
/// # Safety
/// `text_g6` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_from_graph6(text_g6: *const c_char, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let g = Graph::parse_graph6(text(text_g6, "text")?.trim())?;
        write(out, Box::into_raw(Box::new(HgGraph(g))), "out")
    })
}

/// Parses a graph JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_from_json(json: *const c_char, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let g: Graph = serde_json::from_str(text(json, "json")?).map_err(|e| Fail::Text(e.to_string()))?;
        write(out, Box::into_raw(Box::new(HgGraph(g))), "out")
    })
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be null when `m` is 0)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_from_edges(n: usize, edges: *const usize, m: usize, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Fail::Null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(n, &pairs)?;
        write(out, Box::into_raw(Box::new(HgGraph(g))), "out")
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_free(g: *mut HgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, 0 for null.
///
/// # Safety
/// `g` must be null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_vertex_count(g: *const HgGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// Edge count, 0 for null.
///
/// # Safety
/// `g` must be null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_edge_count(g: *const HgGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edges().count())
}

/// Writes the graph6 encoding to `*out`.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_to_graph6(g: *const HgGraph, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let s = graph(g)?.to_graph6();
        write(out, owned(s), "out")
    })
}

/// Writes the JSON document to `*out`.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_to_json(g: *const HgGraph, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let s = serde_json::to_string(graph(g)?).map_err(|e| Fail::Text(e.to_string()))?;
        write(out, owned(s), "out")
    })
}

/// Exact hat guessing number with `s` guesses, searching `k` up to `cap`.
/// `max_nodes` of 0 means the default budget.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_solve_exact(g: *const HgGraph, s: u32, cap: u32, max_nodes: u64, out: *mut u32) -> HgStatus {
    guard(|| {
        let hg = game::hg_exact(graph(g)?, s as usize, cap, budget(max_nodes))?;
        write(out, hg, "out")
    })
}

/// Whether the players win with `k` colors per vertex and `s` guesses.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hg_players_win(g: *const HgGraph, k: u32, s: u32, max_nodes: u64, out: *mut bool) -> HgStatus {
    guard(|| {
        let g = graph(g)?;
        let lists = ColorLists::uniform(g.vertex_count(), k);
        let outcome = game::players_win(g, &lists, s as usize, budget(max_nodes))?;
        write(out, outcome.wins(), "out")
    })
}

/// Runs a command-line invocation (without the program name) and writes
/// its JSON output to `*out_json` and its exit code to `*out_code`. The
/// status reflects the exit code; the diagnostics go to `hg_last_error`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; both out-parameters
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_run(
    argc: usize,
    argv: *const *const c_char,
    out_json: *mut *mut c_char,
    out_code: *mut c_int,
) -> HgStatus {
    let mut stderr = String::new();
    let status = guard(|| {
        if out_json.is_null() || out_code.is_null() {
            return Err(Fail::Null("out"));
        }
        let mut args = vec!["hatguess".to_string()];
        for i in 0..argc {
            if argv.is_null() {
                return Err(Fail::Null("argv"));
            }
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let out = hatguess::cli::run(args);
        out_json.write(owned(out.stdout));
        out_code.write(out.code);
        stderr = out.stderr;
        Ok(())
    });
    if status != HgStatus::Ok {
        return status;
    }
    let code = *out_code;
    if code == 0 {
        return HgStatus::Ok;
    }
    set_error(stderr.trim_end());
    match code {
        2 => HgStatus::Budget,
        4 => HgStatus::ClaimViolation,
        _ => HgStatus::Input,
    }
}
