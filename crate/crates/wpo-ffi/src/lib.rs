//! C ABI over the wpo solvers. Graphs are opaque handles created from
//! parallel edge arrays; every function returns a status code and
//! writes results through out-pointers. All pointers must be valid for
//! the stated lengths; handles must be freed with `wpo_graph_free`.

use std::os::raw::c_char;
use wpo::{
    brute_force_po, heuristic_td, is_proper, mu_minus, nicefy, tree_po, twdp_po, Orientation,
    WeightedGraph,
};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WpoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotATree = 3,
    /// no proper orientation exists
    Infeasible = 4,
    /// instance exceeds a solver's size precondition
    TooLarge = 5,
}

/// Opaque weighted graph handle.
pub struct WpoGraph {
    g: WeightedGraph,
}

/// Build a graph from `m` edges given as parallel arrays of 0-indexed
/// endpoints and positive weights. On success writes a fresh handle to
/// `out`.
///
/// # Safety
/// `tails`, `heads`, `weights` must point to `m` readable elements and
/// `out` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn wpo_graph_create(
    n: usize,
    m: usize,
    tails: *const usize,
    heads: *const usize,
    weights: *const u64,
    out: *mut *mut WpoGraph,
) -> WpoStatus {
    if out.is_null() || (m > 0 && (tails.is_null() || heads.is_null() || weights.is_null())) {
        return WpoStatus::NullPointer;
    }
    let tails = std::slice::from_raw_parts(tails, m);
    let heads = std::slice::from_raw_parts(heads, m);
    let weights = std::slice::from_raw_parts(weights, m);
    let edges: Vec<(usize, usize, u64)> =
        (0..m).map(|i| (tails[i], heads[i], weights[i])).collect();
    match WeightedGraph::new(n, &edges) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(WpoGraph { g }));
            WpoStatus::Ok
        }
        Err(_) => WpoStatus::InvalidArgument,
    }
}

/// Release a handle created by `wpo_graph_create`. Null is a no-op.
///
/// # Safety
/// `g` must be a live handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wpo_graph_free(g: *mut WpoGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn write_result(
    g: &WeightedGraph,
    po: u64,
    d: &Orientation,
    out_po: *mut u64,
    out_heads: *mut usize,
) -> WpoStatus {
    debug_assert!(g.m() == 0 || is_proper(g, d));
    debug_assert!(g.m() == 0 || mu_minus(g, d) == po);
    if !out_po.is_null() {
        *out_po = po;
    }
    if !out_heads.is_null() {
        let heads = std::slice::from_raw_parts_mut(out_heads, g.m());
        for (e, h) in heads.iter_mut().enumerate() {
            *h = d.head(g, e);
        }
    }
    WpoStatus::Ok
}

/// Exact solve for trees. Writes the optimum to `out_po` and, if
/// `out_heads` is non-null, the head vertex of each edge (edge order of
/// creation) to `out_heads[0..m]`.
///
/// # Safety
/// `g` must be a live handle; `out_heads`, when non-null, must have
/// room for `m` elements.
#[no_mangle]
pub unsafe extern "C" fn wpo_tree_po(
    g: *const WpoGraph,
    out_po: *mut u64,
    out_heads: *mut usize,
) -> WpoStatus {
    let Some(h) = g.as_ref() else {
        return WpoStatus::NullPointer;
    };
    match tree_po(&h.g) {
        Ok((po, d)) => write_result(&h.g, po, &d, out_po, out_heads),
        Err(_) => WpoStatus::NotATree,
    }
}

/// Exact solve via the treewidth dynamic program with a heuristic
/// decomposition. Same output contract as `wpo_tree_po`.
///
/// # Safety
/// Same contract as `wpo_tree_po`.
#[no_mangle]
pub unsafe extern "C" fn wpo_twdp_po(
    g: *const WpoGraph,
    out_po: *mut u64,
    out_heads: *mut usize,
) -> WpoStatus {
    let Some(h) = g.as_ref() else {
        return WpoStatus::NullPointer;
    };
    let ntd = nicefy(&heuristic_td(&h.g));
    match twdp_po(&h.g, &ntd) {
        Ok(Some((po, d))) => write_result(&h.g, po, &d, out_po, out_heads),
        Ok(None) => WpoStatus::Infeasible,
        Err(_) => WpoStatus::InvalidArgument,
    }
}

/// Exhaustive solve, limited to 22 edges. Same output contract as
/// `wpo_tree_po`.
///
/// # Safety
/// Same contract as `wpo_tree_po`.
#[no_mangle]
pub unsafe extern "C" fn wpo_brute_force_po(
    g: *const WpoGraph,
    out_po: *mut u64,
    out_heads: *mut usize,
) -> WpoStatus {
    let Some(h) = g.as_ref() else {
        return WpoStatus::NullPointer;
    };
    match brute_force_po(&h.g, wpo::DEFAULT_EDGE_LIMIT) {
        Ok(Some((po, d))) => write_result(&h.g, po, &d, out_po, out_heads),
        Ok(None) => WpoStatus::Infeasible,
        Err(_) => WpoStatus::TooLarge,
    }
}

/// Check an orientation given as per-edge head vertices: writes 1 to
/// `out_proper` iff adjacent inweights are all distinct, and the
/// maximum inweight to `out_mu`.
///
/// # Safety
/// `heads` must point to `m` readable elements, each an endpoint of the
/// corresponding edge.
#[no_mangle]
pub unsafe extern "C" fn wpo_verify(
    g: *const WpoGraph,
    heads: *const usize,
    out_proper: *mut i32,
    out_mu: *mut u64,
) -> WpoStatus {
    let Some(h) = g.as_ref() else {
        return WpoStatus::NullPointer;
    };
    if h.g.m() > 0 && heads.is_null() {
        return WpoStatus::NullPointer;
    }
    let heads = std::slice::from_raw_parts(heads, h.g.m());
    let mut dir = Vec::with_capacity(h.g.m());
    for (e, &hd) in heads.iter().enumerate() {
        let edge = h.g.edge(e);
        if hd == edge.v {
            dir.push(true);
        } else if hd == edge.u {
            dir.push(false);
        } else {
            return WpoStatus::InvalidArgument;
        }
    }
    let d = Orientation::new(dir);
    if !out_proper.is_null() {
        *out_proper = is_proper(&h.g, &d) as i32;
    }
    if !out_mu.is_null() {
        *out_mu = mu_minus(&h.g, &d);
    }
    WpoStatus::Ok
}

/// Human-readable description of a status code. Returns a static
/// NUL-terminated string.
#[no_mangle]
pub extern "C" fn wpo_status_message(status: WpoStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        WpoStatus::Ok => b"ok\0",
        WpoStatus::NullPointer => b"null pointer argument\0",
        WpoStatus::InvalidArgument => b"invalid argument\0",
        WpoStatus::NotATree => b"input graph is not a tree\0",
        WpoStatus::Infeasible => b"no proper orientation exists\0",
        WpoStatus::TooLarge => b"instance too large for this solver\0",
    };
    s.as_ptr() as *const c_char
}
