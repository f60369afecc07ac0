//! Weighted graphs, orientations and the proper-orientation verifier.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0} has zero weight")]
    ZeroWeight(EdgeId),
    #[error("edge {0} has endpoint out of range")]
    EndpointOutOfRange(EdgeId),
    #[error("total edge weight overflows u64")]
    WeightOverflow,
    #[error("orientation covers {got} edges, graph has {expected}")]
    OrientationMismatch { got: usize, expected: usize },
    #[error("side vector has wrong length")]
    SideLengthMismatch,
    #[error("edge {{{0}, {1}}} does not cross the bipartition")]
    NotBipartite(VertexId, VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple undirected graph with positive integer edge weights.
/// Edge ids are positions in the construction list and stay stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(EdgeId, VertexId)>>,
    total_weight: u64,
    max_weight: u64,
}

impl WeightedGraph {
    pub fn new(n: usize, edge_list: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        let mut total: u64 = 0;
        let mut max_w: u64 = 0;
        for (id, &(u, v, w)) in edge_list.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange(id));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(id));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            total = total.checked_add(w).ok_or(GraphError::WeightOverflow)?;
            max_w = max_w.max(w);
            adj[u].push((id, v));
            adj[v].push((id, u));
            edges.push(Edge { u, v, w });
        }
        Ok(WeightedGraph {
            n,
            edges,
            adj,
            total_weight: total,
            max_weight: max_w,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Incident edges of `v` as `(edge id, other endpoint)` pairs.
    pub fn adj(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// K, the maximum edge weight (0 on edgeless graphs).
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, u) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }
}

/// One direction bit per edge: `true` means the arc runs from the stored
/// `u` endpoint to the stored `v` endpoint (head `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    dir: Vec<bool>,
}

impl Orientation {
    pub fn new(dir: Vec<bool>) -> Self {
        Orientation { dir }
    }

    pub fn len(&self) -> usize {
        self.dir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dir.is_empty()
    }

    pub fn dir(&self, e: EdgeId) -> bool {
        self.dir[e]
    }

    pub fn set(&mut self, e: EdgeId, d: bool) {
        self.dir[e] = d;
    }

    pub fn head(&self, g: &WeightedGraph, e: EdgeId) -> VertexId {
        let edge = g.edge(e);
        if self.dir[e] {
            edge.v
        } else {
            edge.u
        }
    }

    pub fn tail(&self, g: &WeightedGraph, e: EdgeId) -> VertexId {
        let edge = g.edge(e);
        if self.dir[e] {
            edge.u
        } else {
            edge.v
        }
    }

    /// Orientation with every arc reversed.
    pub fn reversed(&self) -> Self {
        Orientation {
            dir: self.dir.iter().map(|d| !d).collect(),
        }
    }
}

/// Per-vertex inweights w⁻ and outweights w⁺ of an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InweightProfile {
    pub inweight: Vec<u64>,
    pub outweight: Vec<u64>,
}

impl InweightProfile {
    /// μ⁻, the maximum inweight (0 on edgeless graphs).
    pub fn mu_minus(&self) -> u64 {
        self.inweight.iter().copied().max().unwrap_or(0)
    }
}

pub fn compute_inweights(g: &WeightedGraph, d: &Orientation) -> InweightProfile {
    assert_eq!(
        d.len(),
        g.m(),
        "orientation covers {} edges, graph has {}",
        d.len(),
        g.m()
    );
    let mut inweight = vec![0u64; g.n()];
    let mut outweight = vec![0u64; g.n()];
    for e in 0..g.m() {
        let head = d.head(g, e);
        let tail = d.tail(g, e);
        let w = g.edge(e).w;
        // total weight fits in u64 by construction, so these cannot overflow
        inweight[head] += w;
        outweight[tail] += w;
    }
    InweightProfile {
        inweight,
        outweight,
    }
}

pub fn mu_minus(g: &WeightedGraph, d: &Orientation) -> u64 {
    compute_inweights(g, d).mu_minus()
}

/// True iff the inweights form a proper coloring of `g`. Linear in n + m.
pub fn is_proper(g: &WeightedGraph, d: &Orientation) -> bool {
    let profile = compute_inweights(g, d);
    g.edges()
        .iter()
        .all(|e| profile.inweight[e.u] != profile.inweight[e.v])
}

/// Orient every edge from its side-0 endpoint to its side-1 endpoint.
/// Rejects edges that do not cross the bipartition. The result is always
/// proper: side-0 vertices get inweight 0, side-1 vertices at least 1.
pub fn bipartition_orientation(
    g: &WeightedGraph,
    side: &[bool],
) -> Result<Orientation, GraphError> {
    if side.len() != g.n() {
        return Err(GraphError::SideLengthMismatch);
    }
    let mut dir = Vec::with_capacity(g.m());
    for e in g.edges() {
        if side[e.u] == side[e.v] {
            return Err(GraphError::NotBipartite(e.u, e.v));
        }
        dir.push(!side[e.u]);
    }
    Ok(Orientation::new(dir))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_triangle() -> WeightedGraph {
        WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn build_single_edge() {
        let g = WeightedGraph::new(2, &[(0, 1, 5)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.max_weight(), 5);
    }

    #[test]
    fn build_rejects_invalid() {
        assert_eq!(
            WeightedGraph::new(3, &[(0, 1, 1), (0, 1, 2)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            WeightedGraph::new(3, &[(1, 1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            WeightedGraph::new(2, &[(0, 1, 0)]).unwrap_err(),
            GraphError::ZeroWeight(0)
        );
        assert_eq!(
            WeightedGraph::new(2, &[(0, 2, 1)]).unwrap_err(),
            GraphError::EndpointOutOfRange(0)
        );
        assert_eq!(
            WeightedGraph::new(2, &[(0, 1, u64::MAX), (0, 1, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            WeightedGraph::new(3, &[(0, 1, u64::MAX), (1, 2, 1)]).unwrap_err(),
            GraphError::WeightOverflow
        );
    }

    #[test]
    fn inweights_single_arc() {
        let g = WeightedGraph::new(2, &[(0, 1, 5)]).unwrap();
        let d = Orientation::new(vec![true]);
        let p = compute_inweights(&g, &d);
        assert_eq!(p.inweight, vec![0, 5]);
        assert_eq!(p.mu_minus(), 5);
        assert!(is_proper(&g, &d));
    }

    #[test]
    fn inweights_cyclic_triangle() {
        let g = unit_triangle();
        // 0→1, 1→2, 2→0
        let d = Orientation::new(vec![true, true, false]);
        let p = compute_inweights(&g, &d);
        assert_eq!(p.inweight, vec![1, 1, 1]);
        assert_eq!(p.mu_minus(), 1);
        assert!(!is_proper(&g, &d));
    }

    #[test]
    fn inweights_path_into_center() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let d = Orientation::new(vec![true, false]);
        let p = compute_inweights(&g, &d);
        assert_eq!(p.inweight, vec![0, 2, 0]);
        assert_eq!(p.mu_minus(), 2);
        assert!(is_proper(&g, &d));
    }

    #[test]
    fn bipartition_path() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let d = bipartition_orientation(&g, &[false, true, false]).unwrap();
        let p = compute_inweights(&g, &d);
        assert_eq!(p.inweight, vec![0, 2, 0]);
        assert!(is_proper(&g, &d));
    }

    #[test]
    fn bipartition_single_edge() {
        let g = WeightedGraph::new(2, &[(0, 1, 7)]).unwrap();
        let d = bipartition_orientation(&g, &[false, true]).unwrap();
        assert_eq!(d.head(&g, 0), 1);
    }

    #[test]
    fn bipartition_rejects_triangle() {
        let g = unit_triangle();
        assert!(matches!(
            bipartition_orientation(&g, &[false, true, false]),
            Err(GraphError::NotBipartite(_, _))
        ));
    }

    #[test]
    fn conservation_and_reversal() {
        let g = unit_triangle();
        for mask in 0..8u32 {
            let d = Orientation::new((0..3).map(|i| mask >> i & 1 == 1).collect());
            let p = compute_inweights(&g, &d);
            assert_eq!(p.inweight.iter().sum::<u64>(), g.total_weight());
            assert_eq!(p.outweight.iter().sum::<u64>(), g.total_weight());
            let r = compute_inweights(&g, &d.reversed());
            assert_eq!(r.inweight, p.outweight);
            assert_eq!(r.outweight, p.inweight);
        }
    }
}
