//! C interface to the simcent library.
//!
//! Complexes are opaque heap objects owned by the caller and released with
//! [`simcent_complex_free`]. Every fallible call returns a [`SimcentStatus`];
//! on failure a description is available from [`simcent_last_error`] until
//! the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use simcent::centrality::{centrality, CentralityOptions, Measure};
use simcent::families::Family;
use simcent::{combined_adjacency, CliqueComplex, Error, Graph};

/// Opaque clique complex.
pub struct SimcentComplex {
    inner: CliqueComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimcentStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    IoError = 4,
    InsufficientDepth = 5,
    LevelOutOfRange = 6,
    NumericalFailure = 7,
    LimitExceeded = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimcentMeasure {
    Degree = 0,
    Closeness = 1,
    Harmonic = 2,
    Betweenness = 3,
    Katz = 4,
    Eigenvector = 5,
    Subgraph = 6,
}

impl From<SimcentMeasure> for Measure {
    fn from(m: SimcentMeasure) -> Self {
        match m {
            SimcentMeasure::Degree => Measure::Degree,
            SimcentMeasure::Closeness => Measure::Closeness,
            SimcentMeasure::Harmonic => Measure::Harmonic,
            SimcentMeasure::Betweenness => Measure::Betweenness,
            SimcentMeasure::Katz => Measure::Katz,
            SimcentMeasure::Eigenvector => Measure::Eigenvector,
            SimcentMeasure::Subgraph => Measure::Subgraph,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimcentFamily {
    /// `l` k-simplices sharing one face; params `l, k`.
    Star = 0,
    /// Central k-simplex with arms; params `k, x0, .., xk`.
    Branched = 1,
    /// Chain of `l` k-simplices; params `l, k`.
    Path = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SimcentStatus {
    match err {
        Error::Parse { .. } => SimcentStatus::ParseError,
        Error::Io { .. } => SimcentStatus::IoError,
        Error::InsufficientDepth { .. } => SimcentStatus::InsufficientDepth,
        Error::LevelOutOfRange { .. } | Error::EmptyLevel(_) => SimcentStatus::LevelOutOfRange,
        Error::InvalidArgument(_) | Error::InadmissibleAlpha { .. } => {
            SimcentStatus::InvalidArgument
        }
        Error::NoPrincipalEigenvector(_) | Error::NonConvergence(_) | Error::Overflow(_) => {
            SimcentStatus::NumericalFailure
        }
        Error::DenseLimitExceeded { .. } | Error::MatrixTooLarge { .. } => {
            SimcentStatus::LimitExceeded
        }
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (SimcentStatus, String)>) -> SimcentStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SimcentStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SimcentStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SimcentStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(name: &str) -> (SimcentStatus, String) {
    (SimcentStatus::NullPointer, format!("{name} is null"))
}

unsafe fn complex_ref<'a>(
    c: *const SimcentComplex,
) -> Result<&'a CliqueComplex, (SimcentStatus, String)> {
    // SAFETY: the caller passes null or a live handle from this library.
    unsafe { c.as_ref() }
        .map(|c| &c.inner)
        .ok_or_else(|| null_err("complex"))
}

unsafe fn slice<'a, T>(
    p: *const T,
    len: usize,
    name: &str,
) -> Result<&'a [T], (SimcentStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null_err(name));
    }
    // SAFETY: the caller guarantees `len` readable elements at `p`.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

fn publish(out: *mut *mut SimcentComplex, complex: CliqueComplex) {
    let boxed = Box::new(SimcentComplex { inner: complex });
    // SAFETY: `out` was checked to be non-null by the caller of `publish`.
    unsafe { *out = Box::into_raw(boxed) };
}

/// Builds the clique complex of the graph with `n_nodes` nodes (0-based)
/// and edges `sources[i] -- targets[i]`, up to dimension `max_level`.
///
/// # Safety
/// `sources` and `targets` must each point to `n_edges` readable values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_from_edges(
    sources: *const u32,
    targets: *const u32,
    n_edges: usize,
    n_nodes: usize,
    max_level: usize,
    out: *mut *mut SimcentComplex,
) -> SimcentStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let s = unsafe { slice(sources, n_edges, "sources")? };
        let t = unsafe { slice(targets, n_edges, "targets")? };
        if let Some(&bad) = s.iter().chain(t).find(|&&v| v as usize >= n_nodes) {
            return Err((
                SimcentStatus::InvalidArgument,
                format!("node {bad} out of range for {n_nodes} nodes"),
            ));
        }
        let mut g = Graph::with_numbered_nodes(n_nodes);
        for (&u, &v) in s.iter().zip(t) {
            if u != v {
                g.add_edge(u as usize, v as usize);
            }
        }
        publish(out, CliqueComplex::build(g, max_level));
        Ok(())
    })
}

/// Reads an edge-list file (two labels per line, `#` comments).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_from_file(
    path: *const c_char,
    max_level: usize,
    out: *mut *mut SimcentComplex,
) -> SimcentStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        if path.is_null() {
            return Err(null_err("path"));
        }
        // SAFETY: checked non-null; the caller guarantees NUL termination.
        let path = unsafe { CStr::from_ptr(path) }.to_str().map_err(|_| {
            (
                SimcentStatus::InvalidArgument,
                "path is not UTF-8".to_string(),
            )
        })?;
        let (g, _) = Graph::load_edge_list(Path::new(path)).map_err(lib_err)?;
        publish(out, CliqueComplex::build(g, max_level));
        Ok(())
    })
}

/// Builds a synthetic family complex, materialized one level above the
/// family's dimension.
///
/// # Safety
/// `params` must point to `n_params` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_generate(
    family: SimcentFamily,
    params: *const usize,
    n_params: usize,
    out: *mut *mut SimcentComplex,
) -> SimcentStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let p = unsafe { slice(params, n_params, "params")? };
        let pair = || match p {
            [a, b] => Ok((*a, *b)),
            _ => Err((
                SimcentStatus::InvalidArgument,
                format!("{family:?} takes 2 parameters, got {}", p.len()),
            )),
        };
        let fam = match family {
            SimcentFamily::Star => {
                let (count, level) = pair()?;
                Family::Star { count, level }
            }
            SimcentFamily::Path => {
                let (count, level) = pair()?;
                Family::Path { count, level }
            }
            SimcentFamily::Branched => match p.split_first() {
                Some((&level, arms)) => Family::Branched {
                    level,
                    arms: arms.to_vec(),
                },
                None => return Err((SimcentStatus::InvalidArgument, "missing level".into())),
            },
        };
        publish(out, fam.build().map_err(lib_err)?);
        Ok(())
    })
}

/// Releases a complex. Null is ignored.
///
/// # Safety
/// `complex` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_free(complex: *mut SimcentComplex) {
    if !complex.is_null() {
        // SAFETY: ownership returns to Rust exactly once.
        drop(unsafe { Box::from_raw(complex) });
    }
}

/// Highest materialized dimension, or 0 for a null handle.
///
/// # Safety
/// `complex` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_max_level(complex: *const SimcentComplex) -> usize {
    unsafe { complex.as_ref() }.map_or(0, |c| c.inner.max_level())
}

/// Number of simplices at `level`.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_count(
    complex: *const SimcentComplex,
    level: usize,
    out: *mut usize,
) -> SimcentStatus {
    guard(|| {
        let c = unsafe { complex_ref(complex)? };
        if out.is_null() {
            return Err(null_err("out"));
        }
        let n = c.level(level).map_err(lib_err)?.len();
        unsafe { *out = n };
        Ok(())
    })
}

/// Writes the `level + 1` node indices of simplex `id` into `vertices`.
///
/// # Safety
/// `complex` must be a live handle; `vertices` must have room for
/// `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn simcent_complex_simplex(
    complex: *const SimcentComplex,
    level: usize,
    id: usize,
    vertices: *mut usize,
    capacity: usize,
) -> SimcentStatus {
    guard(|| {
        let c = unsafe { complex_ref(complex)? };
        let lvl = c.level(level).map_err(lib_err)?;
        if id >= lvl.len() {
            return Err((
                SimcentStatus::InvalidArgument,
                format!("simplex {id} out of range at level {level}"),
            ));
        }
        if capacity < level + 1 {
            return Err((
                SimcentStatus::BufferTooSmall,
                format!("need {} slots", level + 1),
            ));
        }
        if vertices.is_null() {
            return Err(null_err("vertices"));
        }
        let src = lvl.get(id);
        // SAFETY: capacity checked above.
        unsafe { ptr::copy_nonoverlapping(src.as_ptr(), vertices, src.len()) };
        Ok(())
    })
}

/// Number of adjacent pairs of the combined adjacency at `level`.
///
/// # Safety
/// `complex` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_interaction_count(
    complex: *const SimcentComplex,
    level: usize,
    out: *mut usize,
) -> SimcentStatus {
    guard(|| {
        let c = unsafe { complex_ref(complex)? };
        if out.is_null() {
            return Err(null_err("out"));
        }
        let n = combined_adjacency(c, level)
            .map_err(lib_err)?
            .interaction_count();
        unsafe { *out = n };
        Ok(())
    })
}

/// Scores of `measure` for every simplex at `level`, written to `scores`.
/// `alpha` is the Katz damping; pass 0 or NaN for the default. `normalized`
/// applies to closeness and betweenness. `written` receives the number of
/// simplices, also when the buffer is too small.
///
/// # Safety
/// `complex` must be a live handle; `scores` must have room for `capacity`
/// values; `written` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn simcent_centrality(
    complex: *const SimcentComplex,
    level: usize,
    measure: SimcentMeasure,
    alpha: f64,
    normalized: c_int,
    scores: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> SimcentStatus {
    guard(|| {
        let c = unsafe { complex_ref(complex)? };
        let n = c.level(level).map_err(lib_err)?.len();
        if !written.is_null() {
            unsafe { *written = n };
        }
        if capacity < n {
            return Err((SimcentStatus::BufferTooSmall, format!("need {n} slots")));
        }
        if scores.is_null() && n > 0 {
            return Err(null_err("scores"));
        }
        let opts = CentralityOptions {
            normalized: normalized != 0,
            alpha: (alpha.is_finite() && alpha != 0.0).then_some(alpha),
            ..CentralityOptions::default()
        };
        let v = centrality(c, level, measure.into(), &opts).map_err(lib_err)?;
        // SAFETY: capacity checked above.
        unsafe { ptr::copy_nonoverlapping(v.scores.as_ptr(), scores, n) };
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn simcent_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn simcent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
