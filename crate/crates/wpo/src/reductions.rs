//! Hardness-instance generators: subset sum encoded as a weighted tree
//! orientation problem, and minimum-maximum-indegree (MMI) instances
//! rewritten into weighted proper orientation instances via edge
//! gadgets. Both serve as benchmark factories and as end-to-end checks
//! against the solvers.

use crate::graph::{GraphError, VertexId, WeightedGraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("item {index} has value {value}, must satisfy 0 < value < {k}")]
    ItemOutOfRange { index: usize, value: u64, k: u64 },
    #[error("target must be at least 2 so that some valid item exists, got {0}")]
    TargetTooSmall(u64),
    #[error("edge {index} has odd weight {w}; instance must be evenized first")]
    OddWeight { index: usize, w: u64 },
    #[error("bound {0} is odd; instance must be evenized first")]
    OddBound(u64),
    #[error("edge {index} has weight {w} exceeding the bound {k}")]
    OverweightEdge { index: usize, w: u64, k: u64 },
    #[error("vertex {v} violates the star property: incident weight {sum} >= {limit}")]
    StarPropertyViolated { v: VertexId, sum: u64, limit: u64 },
    #[error("gadget for edge {index} would need a non-positive weight")]
    NonPositiveGadgetWeight { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A minimum-maximum-indegree decision instance: does some orientation
/// (not necessarily proper) have maximum inweight at most `k`?
#[derive(Clone, Debug)]
pub struct MmiInstance {
    pub graph: WeightedGraph,
    pub k: u64,
}

/// Gadget vertex map for one source edge of the MMI rewrite. `w` and
/// `k` are the source-edge weight and the decision bound at the gadget
/// stage, kept so the construction can be re-audited afterwards.
#[derive(Clone, Debug)]
pub enum EdgeGadget {
    /// weight < k: u–x–v split plus the triangle-ish tail x–y, y–z, x–z
    Light {
        u: VertexId,
        v: VertexId,
        x: VertexId,
        y: VertexId,
        z: VertexId,
        w: u64,
        k: u64,
    },
    /// weight = k: path u–x–y–v
    Heavy {
        u: VertexId,
        v: VertexId,
        x: VertexId,
        y: VertexId,
        w: u64,
        k: u64,
    },
}

#[derive(Clone, Debug)]
pub enum Provenance {
    /// Output of [`subsetsum_to_tree`]: which vertex plays which role.
    SubsetSum {
        items: Vec<u64>,
        target: u64,
        hub: VertexId,
        spine: [VertexId; 3],
        item_vertices: Vec<VertexId>,
        /// one entry per path length ℓ, with its four vertices in order
        paths: Vec<(u64, [VertexId; 4])>,
    },
    /// Output of the MMI rewrite: the source instance, the per-stage
    /// decision bounds, and the per-edge gadget vertex maps.
    Mmi {
        source: WeightedGraph,
        source_k: u64,
        /// bounds after each stage: input, evenize, star triangles, gadgets
        stage_bounds: [u64; 4],
        /// (v, v1, v2) for each attached triangle, in final-graph ids
        triangles: Vec<(VertexId, VertexId, VertexId)>,
        gadgets: Vec<EdgeGadget>,
    },
}

#[derive(Clone, Debug)]
pub struct WpoInstance {
    pub graph: WeightedGraph,
    pub k: u64,
    pub provenance: Provenance,
}

/// Encode SubsetSum(items, target) as a tree: a hub `w` carrying a
/// heavy spine, one pendant edge of weight i_j per item, and pendant
/// four-vertex paths whose uniform weights blanket every inweight value
/// the hub must avoid. Some subset of items sums to `target` iff the
/// tree admits a proper orientation with maximum inweight 2·target + 6.
/// Items must satisfy 0 < i_j < target.
pub fn subsetsum_to_tree(items: &[u64], target: u64) -> Result<WpoInstance, ReductionError> {
    let k = target;
    if k < 2 {
        return Err(ReductionError::TargetTooSmall(k));
    }
    for (index, &value) in items.iter().enumerate() {
        if value == 0 || value >= k {
            return Err(ReductionError::ItemOutOfRange { index, value, k });
        }
    }
    let hub = 0;
    let spine = [1, 2, 3];
    let mut edges: Vec<(VertexId, VertexId, u64)> = vec![
        (hub, spine[0], k + 5),
        (spine[0], spine[1], 2 * k + 6),
        (spine[1], spine[2], 2 * k + 6),
    ];
    let mut next = 4;
    let mut item_vertices = Vec::with_capacity(items.len());
    for &i in items {
        edges.push((hub, next, i));
        item_vertices.push(next);
        next += 1;
    }
    let mut paths = Vec::new();
    for ell in k + 4..=2 * k + 5 {
        if ell == 2 * k + 4 {
            continue;
        }
        let vs = [next, next + 1, next + 2, next + 3];
        next += 4;
        edges.push((hub, vs[0], 1));
        edges.push((vs[0], vs[1], ell));
        edges.push((vs[1], vs[2], ell));
        edges.push((vs[2], vs[3], ell));
        paths.push((ell, vs));
    }
    let graph = WeightedGraph::new(next, &edges)?;
    debug_assert!(graph.is_tree());
    debug_assert_eq!(graph.n(), items.len() + 4 + 4 * (k as usize + 1));
    Ok(WpoInstance {
        graph,
        k: 2 * k + 6,
        provenance: Provenance::SubsetSum {
            items: items.to_vec(),
            target,
            hub,
            spine,
            item_vertices,
            paths,
        },
    })
}

/// Double every edge weight and the bound. Equivalent instance in which
/// all quantities are even, which the later gadget stages rely on.
pub fn evenize(inst: &MmiInstance) -> Result<MmiInstance, ReductionError> {
    let edges: Vec<(VertexId, VertexId, u64)> = inst
        .graph
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.w * 2))
        .collect();
    Ok(MmiInstance {
        graph: WeightedGraph::new(inst.graph.n(), &edges)?,
        k: inst.k * 2,
    })
}

fn require_even(inst: &MmiInstance) -> Result<(), ReductionError> {
    if !inst.k.is_multiple_of(2) {
        return Err(ReductionError::OddBound(inst.k));
    }
    for (index, e) in inst.graph.edges().iter().enumerate() {
        if e.w % 2 != 0 {
            return Err(ReductionError::OddWeight { index, w: e.w });
        }
    }
    Ok(())
}

fn require_weights_at_most(inst: &MmiInstance, k: u64) -> Result<(), ReductionError> {
    for (index, e) in inst.graph.edges().iter().enumerate() {
        if e.w > k {
            return Err(ReductionError::OverweightEdge { index, w: e.w, k });
        }
    }
    Ok(())
}

/// Attach a triangle (v, v1, v2) to every vertex v, with weights 2 on
/// vv1 and vv2 and k+2 on v1v2, and raise the bound to k+2. The output
/// is equivalent to the input and gains the star property: every
/// endpoint of a maximum-weight edge has total incident weight below
/// twice the bound. Requires an even instance with no over-weight edge.
/// Layout: v1 = n + 2v, v2 = n + 2v + 1.
pub fn enforce_star_property(inst: &MmiInstance) -> Result<MmiInstance, ReductionError> {
    require_even(inst)?;
    require_weights_at_most(inst, inst.k)?;
    let n = inst.graph.n();
    let k = inst.k;
    let mut edges: Vec<(VertexId, VertexId, u64)> =
        inst.graph.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    for v in 0..n {
        let v1 = n + 2 * v;
        let v2 = n + 2 * v + 1;
        edges.push((v, v1, 2));
        edges.push((v, v2, 2));
        edges.push((v1, v2, k + 2));
    }
    let out = MmiInstance {
        graph: WeightedGraph::new(n + 2 * n, &edges)?,
        k: k + 2,
    };
    debug_assert!(star_property_holds(&out));
    Ok(out)
}

fn star_property_holds(inst: &MmiInstance) -> bool {
    inst.graph
        .edges()
        .iter()
        .filter(|e| e.w == inst.k)
        .all(|e| {
            [e.u, e.v].iter().all(|&v| {
                let sum: u64 = inst
                    .graph
                    .adj(v)
                    .iter()
                    .map(|&(eid, _)| inst.graph.edge(eid).w)
                    .sum();
                sum < 2 * inst.k
            })
        })
}

/// Replace every edge by a gadget so that properness of the output
/// encodes the indegree bound of the input: an orientation of G with
/// maximum inweight ≤ k exists iff the output graph has a proper
/// orientation with maximum inweight ≤ k. Requires an even instance
/// with the star property. Edges of weight w < k become a five-vertex
/// gadget (u–x, x–v of weight w; x–y of weight k−1−w; y–z of weight k;
/// x–z of weight k−w−1); edges of weight exactly k become the path
/// u–x–y–v with weights k, 1, k.
pub fn mmi_to_wpo(inst: &MmiInstance) -> Result<WpoInstance, ReductionError> {
    require_even(inst)?;
    require_weights_at_most(inst, inst.k)?;
    let k = inst.k;
    if !star_property_holds(inst) {
        let bad = inst
            .graph
            .edges()
            .iter()
            .filter(|e| e.w == k)
            .flat_map(|e| [e.u, e.v])
            .find(|&v| {
                inst.graph
                    .adj(v)
                    .iter()
                    .map(|&(eid, _)| inst.graph.edge(eid).w)
                    .sum::<u64>()
                    >= 2 * k
            })
            .expect("violating vertex exists when the property fails");
        let sum = inst
            .graph
            .adj(bad)
            .iter()
            .map(|&(eid, _)| inst.graph.edge(eid).w)
            .sum();
        return Err(ReductionError::StarPropertyViolated {
            v: bad,
            sum,
            limit: 2 * k,
        });
    }
    let n = inst.graph.n();
    let mut next = n;
    let mut edges: Vec<(VertexId, VertexId, u64)> = Vec::new();
    let mut gadgets = Vec::with_capacity(inst.graph.m());
    for (index, e) in inst.graph.edges().iter().enumerate() {
        let (u, v, w) = (e.u, e.v, e.w);
        if w < k {
            if k < w + 2 {
                return Err(ReductionError::NonPositiveGadgetWeight { index });
            }
            // the proof's blocking inequalities for this gadget
            assert!(2 * k - w - 1 > k);
            assert!(k + w - 1 > k);
            let (x, y, z) = (next, next + 1, next + 2);
            next += 3;
            edges.push((u, x, w));
            edges.push((x, v, w));
            edges.push((x, y, k - 1 - w));
            edges.push((y, z, k));
            edges.push((x, z, k - w - 1));
            gadgets.push(EdgeGadget::Light {
                u,
                v,
                x,
                y,
                z,
                w,
                k,
            });
        } else {
            let (x, y) = (next, next + 1);
            next += 2;
            edges.push((u, x, k));
            edges.push((x, y, 1));
            edges.push((y, v, k));
            gadgets.push(EdgeGadget::Heavy { u, v, x, y, w, k });
        }
    }
    Ok(WpoInstance {
        graph: WeightedGraph::new(next, &edges)?,
        k,
        provenance: Provenance::Mmi {
            source: inst.graph.clone(),
            source_k: inst.k,
            stage_bounds: [inst.k, inst.k, inst.k, inst.k],
            triangles: Vec::new(),
            gadgets,
        },
    })
}

/// Full pipeline from an MMI instance to an equivalent weighted proper
/// orientation instance: evenize, attach the star triangles, then
/// replace every edge by its gadget. The final bound is 2k + 2. No
/// source edge may weigh more than k.
pub fn mmi_reduce_full(g: &WeightedGraph, k: u64) -> Result<WpoInstance, ReductionError> {
    let source = MmiInstance {
        graph: g.clone(),
        k,
    };
    require_weights_at_most(&source, k)?;
    let even = evenize(&source)?;
    let starred = enforce_star_property(&even)?;
    let mut out = mmi_to_wpo(&starred)?;
    let n = even.graph.n();
    let Provenance::Mmi { gadgets, .. } = out.provenance else {
        unreachable!("mmi_to_wpo always yields Mmi provenance");
    };
    out.provenance = Provenance::Mmi {
        source: g.clone(),
        source_k: k,
        stage_bounds: [k, even.k, starred.k, out.k],
        triangles: (0..n).map(|v| (v, n + 2 * v, n + 2 * v + 1)).collect(),
        gadgets,
    };
    debug_assert_eq!(out.k, 2 * k + 2);
    Ok(out)
}
