//! Tree decompositions: validation, nicefication and a min-fill
//! elimination-ordering heuristic decomposer.

use crate::graph::{VertexId, WeightedGraph};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error("bag tree is not a tree ({bags} bags, {edges} edges)")]
    BagTreeNotATree { bags: usize, edges: usize },
    #[error("bag index {0} out of range")]
    BagIndexOutOfRange(usize),
    #[error("bag {bag} contains out-of-range vertex {vertex}")]
    VertexOutOfRange { bag: usize, vertex: usize },
    #[error("vertex {0} is not covered by any bag")]
    VertexUncovered(VertexId),
    #[error("edge {{{0}, {1}}} is not contained in any bag")]
    EdgeUncovered(VertexId, VertexId),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    DisconnectedOccurrences(VertexId),
}

/// A rooted bag tree over a graph's vertices.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<VertexId>>,
    pub tree_edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Check the three decomposition conditions against `g` and return the
/// width (max bag size minus one).
pub fn validate_td(g: &WeightedGraph, td: &TreeDecomposition) -> Result<usize, TdError> {
    let nb = td.bags.len();
    if td.tree_edges.len() + 1 != nb {
        return Err(TdError::BagTreeNotATree {
            bags: nb,
            edges: td.tree_edges.len(),
        });
    }
    if td.root >= nb {
        return Err(TdError::BagIndexOutOfRange(td.root));
    }
    for &(a, b) in &td.tree_edges {
        if a >= nb || b >= nb {
            return Err(TdError::BagIndexOutOfRange(a.max(b)));
        }
    }
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(TdError::VertexOutOfRange { bag: i, vertex: v });
            }
        }
    }
    let adj = td.adjacency();
    // bag tree connectivity (equivalently acyclicity, given the edge count)
    {
        let mut seen = vec![false; nb];
        let mut queue = VecDeque::from([td.root]);
        seen[td.root] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for &t2 in &adj[t] {
                if !seen[t2] {
                    seen[t2] = true;
                    count += 1;
                    queue.push_back(t2);
                }
            }
        }
        if count != nb {
            return Err(TdError::BagTreeNotATree {
                bags: nb,
                edges: td.tree_edges.len(),
            });
        }
    }
    // condition 1: every vertex covered
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            occurrences[v].push(i);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| occurrences[v].is_empty()) {
        return Err(TdError::VertexUncovered(v));
    }
    // condition 2: every edge inside some bag
    let bag_sets: Vec<HashSet<VertexId>> = td
        .bags
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    for e in g.edges() {
        if !occurrences[e.u].iter().any(|&i| bag_sets[i].contains(&e.v)) {
            return Err(TdError::EdgeUncovered(e.u, e.v));
        }
    }
    // condition 3: occurrences of each vertex form a connected subtree
    for (v, occ_list) in occurrences.iter().enumerate() {
        let occ: HashSet<usize> = occ_list.iter().copied().collect();
        let start = occ_list[0];
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &t2 in &adj[t] {
                if occ.contains(&t2) && seen.insert(t2) {
                    queue.push_back(t2);
                }
            }
        }
        if seen.len() != occ.len() {
            return Err(TdError::DisconnectedOccurrences(v));
        }
    }
    Ok(td.width())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(VertexId),
    Forget(VertexId),
    Join,
}

/// A nice tree decomposition: every non-leaf node is an introduce,
/// forget or join node. Bags are kept sorted. Leaf bags are arbitrary.
#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    pub bags: Vec<Vec<VertexId>>,
    pub kinds: Vec<NodeKind>,
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Post-order traversal from the root (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            order.push(t);
            stack.extend(self.children[t].iter().copied());
        }
        order.reverse();
        order
    }

    /// View as a plain decomposition, e.g. for re-validation.
    pub fn as_td(&self) -> TreeDecomposition {
        let mut tree_edges = Vec::new();
        for (t, cs) in self.children.iter().enumerate() {
            for &c in cs {
                tree_edges.push((t, c));
            }
        }
        TreeDecomposition {
            bags: self.bags.clone(),
            tree_edges,
            root: self.root,
        }
    }
}

struct NiceBuilder {
    bags: Vec<Vec<VertexId>>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl NiceBuilder {
    fn push(&mut self, bag: Vec<VertexId>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(children);
        self.bags.len() - 1
    }

    /// Lift a finished node whose bag is `from` up to bag `to` by a
    /// forget chain followed by an introduce chain. Returns the node
    /// whose bag equals `to` (possibly `node` itself).
    fn lift(&mut self, mut node: usize, from: &[VertexId], to: &[VertexId]) -> usize {
        let to_set: HashSet<VertexId> = to.iter().copied().collect();
        let from_set: HashSet<VertexId> = from.iter().copied().collect();
        let mut bag: Vec<VertexId> = from.to_vec();
        for &v in from {
            if !to_set.contains(&v) {
                bag.retain(|&x| x != v);
                node = self.push(bag.clone(), NodeKind::Forget(v), vec![node]);
            }
        }
        for &v in to {
            if !from_set.contains(&v) {
                bag.push(v);
                bag.sort_unstable();
                node = self.push(bag.clone(), NodeKind::Introduce(v), vec![node]);
            }
        }
        node
    }
}

/// Expand a valid decomposition into a nice one of the same width:
/// multi-child bags become chains of binary joins, adjacent bags are
/// connected by forget/introduce chains, and original leaf bags are
/// kept as leaves.
pub fn nicefy(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let adj = td.adjacency();
    let mut builder = NiceBuilder {
        bags: Vec::new(),
        kinds: Vec::new(),
        children: Vec::new(),
    };
    // iterative post-order over the rooted bag tree
    let n = td.bags.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![td.root];
    let mut seen = vec![false; n];
    seen[td.root] = true;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in &adj[t] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = t;
                stack.push(c);
            }
        }
    }
    let mut built: Vec<Option<usize>> = vec![None; n];
    for &t in order.iter().rev() {
        let bag = {
            let mut b = td.bags[t].clone();
            b.sort_unstable();
            b.dedup();
            b
        };
        let child_nodes: Vec<usize> = adj[t]
            .iter()
            .filter(|&&c| parent[c] == t)
            .map(|&c| {
                let sub = built[c].expect("children built before parents");
                let mut from = td.bags[c].clone();
                from.sort_unstable();
                from.dedup();
                builder.lift(sub, &from, &bag)
            })
            .collect();
        let node = match child_nodes.len() {
            0 => builder.push(bag, NodeKind::Leaf, vec![]),
            1 => child_nodes[0],
            _ => child_nodes
                .into_iter()
                .reduce(|acc, next| builder.push(bag.clone(), NodeKind::Join, vec![acc, next]))
                .unwrap(),
        };
        built[t] = Some(node);
    }
    let root = built[td.root].unwrap();
    NiceTreeDecomposition {
        bags: builder.bags,
        kinds: builder.kinds,
        children: builder.children,
        root,
    }
}

/// Heuristic decomposition from a min-fill elimination ordering. No
/// width guarantee, but the result is always valid; trees give width 1,
/// cycles width 2.
pub fn heuristic_td(g: &WeightedGraph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            tree_edges: Vec::new(),
            root: 0,
        };
    }
    let mut nb: Vec<HashSet<VertexId>> = vec![HashSet::new(); n];
    for e in g.edges() {
        nb[e.u].insert(e.v);
        nb[e.v].insert(e.u);
    }
    let mut alive: Vec<bool> = vec![true; n];
    let fill_count = |nb: &[HashSet<VertexId>], v: VertexId| -> usize {
        let ns: Vec<VertexId> = nb[v].iter().copied().collect();
        let mut missing = 0;
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                if !nb[ns[i]].contains(&ns[j]) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut bags: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    let mut elim_pos = vec![usize::MAX; n];
    let mut elim_vertex = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill_count(&nb, v), nb[v].len(), v))
            .unwrap();
        let mut bag: Vec<VertexId> = nb[v].iter().copied().collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        elim_pos[v] = step;
        elim_vertex.push(v);
        let ns: Vec<VertexId> = nb[v].iter().copied().collect();
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                nb[ns[i]].insert(ns[j]);
                nb[ns[j]].insert(ns[i]);
            }
        }
        for &u in &ns {
            nb[u].remove(&v);
        }
        alive[v] = false;
    }
    let root = n - 1;
    let mut tree_edges = Vec::with_capacity(n - 1);
    for (i, bag) in bags.iter().enumerate() {
        if i == root {
            continue;
        }
        let parent = bag
            .iter()
            .filter(|&&u| u != elim_vertex[i])
            .map(|&u| elim_pos[u])
            .min()
            .unwrap_or(root);
        tree_edges.push((i, parent));
    }
    TreeDecomposition {
        bags,
        tree_edges,
        root,
    }
}
