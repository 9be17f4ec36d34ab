//! C ABI over `pathdp`.
//!
//! Every fallible function returns a [`PathdpStatus`] and writes results
//! through out-pointers. On failure the message is available from
//! [`pathdp_last_error_message`] on the same thread. Handles are opaque and
//! must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use pathdp::experiment::Algorithm;
use pathdp::oracle::{exact_bottleneck, exact_count};
use pathdp::{Edge, Graph, NoiseRng, PairTable, PathIndex};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathdpStatus {
    Ok = 0,
    NullPointer = -1,
    InvalidArgument = -2,
    InvalidGraph = -3,
    Io = -4,
    Panic = -99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathdpAlgorithm {
    /// Pure counting release, needs `delta = 0`.
    Canon = 0,
    /// Approximate counting release, needs `delta > 0`.
    Sssp = 1,
    /// Laplace bottleneck release, needs `delta = 0`.
    BottleneckPure = 2,
    /// Gaussian bottleneck release, needs `delta > 0`.
    BottleneckGauss = 3,
}

impl From<PathdpAlgorithm> for Algorithm {
    fn from(a: PathdpAlgorithm) -> Self {
        match a {
            PathdpAlgorithm::Canon => Algorithm::Canon,
            PathdpAlgorithm::Sssp => Algorithm::Sssp,
            PathdpAlgorithm::BottleneckPure => Algorithm::BottleneckPure,
            PathdpAlgorithm::BottleneckGauss => Algorithm::BottleneckGauss,
        }
    }
}

/// One undirected edge.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PathdpEdge {
    pub u: u32,
    pub v: u32,
    /// Public weight, defines the shortest paths.
    pub weight: f64,
    /// Private attribute.
    pub attribute: f64,
}

/// Graph handle. The all-pairs index is built on first use.
pub struct PathdpGraph {
    graph: Graph,
    index: OnceLock<PathIndex>,
}

impl PathdpGraph {
    fn new(graph: Graph) -> Self {
        PathdpGraph {
            graph,
            index: OnceLock::new(),
        }
    }

    fn index(&self) -> &PathIndex {
        self.index.get_or_init(|| PathIndex::build(&self.graph))
    }
}

/// Released answers for every vertex pair.
pub struct PathdpRelease {
    algorithm: Algorithm,
    values: PairTable<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(PathdpStatus, String);

impl From<pathdp::Error> for Failure {
    fn from(e: pathdp::Error) -> Self {
        use pathdp::Error as E;
        let status = match e {
            E::Io(_) => PathdpStatus::Io,
            E::EmptyGraph
            | E::SelfLoop { .. }
            | E::DuplicateEdge { .. }
            | E::InvalidWeight { .. }
            | E::InvalidAttribute { .. }
            | E::VertexOutOfRange { .. }
            | E::Disconnected { .. }
            | E::Parse { .. } => PathdpStatus::InvalidGraph,
            _ => PathdpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PathdpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure or panic and maps it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PathdpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PathdpStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {message}"));
            PathdpStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(graph: *const PathdpGraph) -> Result<&'a PathdpGraph, Failure> {
    unsafe { graph.as_ref() }.ok_or_else(|| null("graph"))
}

fn check_pair(graph: &Graph, u: usize, v: usize) -> Result<(), Failure> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    Ok(())
}

/// Builds a graph from `m` edges over vertices `0..n`.
///
/// # Safety
/// `edges` must point to `m` readable edges (it may be null when `m` is 0)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_graph_from_edges(
    n: usize,
    edges: *const PathdpEdge,
    m: usize,
    out: *mut *mut PathdpGraph,
) -> PathdpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let slice = if m == 0 {
            &[][..]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            unsafe { std::slice::from_raw_parts(edges, m) }
        };
        let list = slice
            .iter()
            .map(|e| Edge::new(e.u as usize, e.v as usize, e.weight, e.attribute))
            .collect();
        let graph = Graph::new(n, list)?;
        unsafe { *out = Box::into_raw(Box::new(PathdpGraph::new(graph))) };
        Ok(())
    })
}

/// Reads a graph from an edge-list file (`u v weight attribute` per line).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_graph_load(path: *const c_char, out: *mut *mut PathdpGraph) -> PathdpStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|_| Failure(PathdpStatus::InvalidArgument, "path is not valid UTF-8".into()))?;
        let graph = Graph::read_edge_list(path)?;
        unsafe { *out = Box::into_raw(Box::new(PathdpGraph::new(graph))) };
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pathdp_graph_free(graph: *mut PathdpGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Vertex and edge counts.
///
/// # Safety
/// `graph` must be a live handle; `n` and `m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_graph_counts(graph: *const PathdpGraph, n: *mut usize, m: *mut usize) -> PathdpStatus {
    guard(|| {
        let g = unsafe { graph_ref(graph) }?;
        if n.is_null() || m.is_null() {
            return Err(null("n or m"));
        }
        unsafe {
            *n = g.graph.n();
            *m = g.graph.m();
        }
        Ok(())
    })
}

/// Exact attribute sum along the shortest path between `u` and `v`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_exact_count(
    graph: *const PathdpGraph,
    u: usize,
    v: usize,
    out: *mut f64,
) -> PathdpStatus {
    guard(|| {
        let g = unsafe { graph_ref(graph) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_pair(&g.graph, u, v)?;
        unsafe { *out = exact_count(&g.graph, g.index(), u, v) };
        Ok(())
    })
}

/// Exact smallest attribute along the shortest path; `+inf` when `u == v`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_exact_bottleneck(
    graph: *const PathdpGraph,
    u: usize,
    v: usize,
    out: *mut f64,
) -> PathdpStatus {
    guard(|| {
        let g = unsafe { graph_ref(graph) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_pair(&g.graph, u, v)?;
        unsafe { *out = exact_bottleneck(&g.graph, g.index(), u, v) };
        Ok(())
    })
}

/// Runs a private release over all pairs.
///
/// `epsilon = +inf` disables noise. `hub_multiplier <= 0` selects the
/// algorithm's default; it is ignored by the bottleneck algorithms. The
/// same `seed` gives the same release.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_release(
    graph: *const PathdpGraph,
    algorithm: PathdpAlgorithm,
    epsilon: f64,
    delta: f64,
    seed: u64,
    hub_multiplier: f64,
    out: *mut *mut PathdpRelease,
) -> PathdpStatus {
    guard(|| {
        let g = unsafe { graph_ref(graph) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let algorithm = Algorithm::from(algorithm);
        let (budget, noise_on) = algorithm.budget(epsilon, Some(delta))?;
        let multiplier = (hub_multiplier > 0.0).then_some(hub_multiplier);
        let values = algorithm.release(&g.graph, g.index(), budget, &NoiseRng::new(seed), noise_on, multiplier)?;
        unsafe { *out = Box::into_raw(Box::new(PathdpRelease { algorithm, values })) };
        Ok(())
    })
}

/// Released value for the pair; symmetric, `0` on the diagonal for counting
/// and `+inf` for bottleneck.
///
/// # Safety
/// `release` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_release_get(
    release: *const PathdpRelease,
    u: usize,
    v: usize,
    out: *mut f64,
) -> PathdpStatus {
    guard(|| {
        let r = unsafe { release.as_ref() }.ok_or_else(|| null("release"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = r.values.n();
        if u >= n || v >= n {
            return Err(Failure(
                PathdpStatus::InvalidArgument,
                format!("pair ({u}, {v}) out of range for n = {n}"),
            ));
        }
        let value = match (u == v, r.algorithm.is_bottleneck()) {
            (false, _) => r.values.get(u, v),
            (true, false) => 0.0,
            (true, true) => f64::INFINITY,
        };
        unsafe { *out = value };
        Ok(())
    })
}

/// Number of vertices covered by the release.
///
/// # Safety
/// `release` must be a live handle and `n` writable.
#[no_mangle]
pub unsafe extern "C" fn pathdp_release_size(release: *const PathdpRelease, n: *mut usize) -> PathdpStatus {
    guard(|| {
        let r = unsafe { release.as_ref() }.ok_or_else(|| null("release"))?;
        if n.is_null() {
            return Err(null("n"));
        }
        unsafe { *n = r.values.n() };
        Ok(())
    })
}

/// Releases a release handle. Null is ignored.
///
/// # Safety
/// `release` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pathdp_release_free(release: *mut PathdpRelease) {
    if !release.is_null() {
        drop(unsafe { Box::from_raw(release) });
    }
}

/// Message of the last failed call on this thread, or null if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pathdp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pathdp_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
