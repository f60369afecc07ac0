//! Exact solver for trees: a pseudo-polynomial decision procedure with
//! boolean feasibility tables per (vertex, inweight), witness
//! reconstruction, and a constructive proper orientation with every
//! indegree at most 4.

use crate::graph::{compute_inweights, is_proper, EdgeId, Orientation, VertexId, WeightedGraph};
use crate::subsetsum::subset_sum;
use thiserror::Error;

/// Guard against pathological pseudo-polynomial table sizes.
const MAX_TABLE_CELLS: u64 = 1 << 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("input graph is not a tree (must be connected with m = n - 1)")]
    NotATree,
    #[error("tree has {0} vertices; rooting requires at least 3")]
    TooSmall(usize),
    #[error("decision table for k = {k} on {n} vertices exceeds the memory cap")]
    BoundTooLarge { k: u64, n: usize },
}

/// A tree rooted at a vertex of degree at least 2, with parent pointers
/// and a children-before-parents traversal order.
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub parent_edge: Vec<Option<EdgeId>>,
    /// Children as (vertex, connecting edge) pairs.
    pub children: Vec<Vec<(VertexId, EdgeId)>>,
    pub post_order: Vec<VertexId>,
}

/// Root a tree (n >= 3) at a vertex of degree >= 2. `preferred` is used
/// when it qualifies; otherwise the lowest-indexed qualifying vertex.
pub fn root_tree(g: &WeightedGraph, preferred: Option<VertexId>) -> Result<RootedTree, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = g.n();
    if n < 3 {
        return Err(TreeError::TooSmall(n));
    }
    let root = match preferred {
        Some(r) if r < n && g.degree(r) >= 2 => r,
        _ => (0..n)
            .find(|&v| g.degree(v) >= 2)
            .expect("a tree on >= 3 vertices has an internal vertex"),
    };
    let mut parent = vec![None; n];
    let mut parent_edge = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(e, u) in g.adj(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                parent_edge[u] = Some(e);
                children[v].push((u, e));
                stack.push(u);
            }
        }
    }
    order.reverse(); // preorder reversed is a valid children-first order
    Ok(RootedTree {
        root,
        parent,
        parent_edge,
        children,
        post_order: order,
    })
}

/// Feasibility tables of the decision procedure at bound `k`:
/// `rho[v][w]` — some proper orientation of the subtree of `v` gives `v`
/// inweight `w` with maximum inweight at most `k` (parent edge oriented
/// away from `v`); `rho_prime[v][w]` — the parent edge oriented toward
/// `v` yields final inweight `w` at `v` and the coloring stays proper.
#[derive(Debug, Clone)]
pub struct TreeDPTables {
    pub k: u64,
    pub rho: Vec<Vec<bool>>,
    pub rho_prime: Vec<Vec<bool>>,
}

struct ForcedSets {
    inward: Vec<usize>,  // child positions forced toward v (F⁻)
    outward: Vec<usize>, // child positions forced away from v (F⁺)
    free: Vec<usize>,    // N: positions where a choice remains
    clash: bool,         // F⁺ ∩ F⁻ nonempty
    inward_sum: u64,
}

/// Classify the children of `v` for forbidden inweight value `w`.
fn forced_sets(
    children: &[(VertexId, EdgeId)],
    weights: &[u64],
    rho_counts: &[usize],
    rho_prime_counts: &[usize],
    rho: &[Vec<bool>],
    rho_prime: &[Vec<bool>],
    w: usize,
) -> ForcedSets {
    let mut sets = ForcedSets {
        inward: Vec::new(),
        outward: Vec::new(),
        free: Vec::new(),
        clash: false,
        inward_sum: 0,
    };
    for (pos, &(c, _)) in children.iter().enumerate() {
        // "no entry except possibly w itself" tests via per-row counts
        let no_rho = rho_counts[pos] - usize::from(rho[c][w]) == 0;
        let no_rho_prime = rho_prime_counts[pos] - usize::from(rho_prime[c][w]) == 0;
        match (no_rho, no_rho_prime) {
            (true, true) => {
                sets.clash = true;
                return sets;
            }
            (true, false) => sets.outward.push(pos),
            (false, true) => {
                sets.inward.push(pos);
                sets.inward_sum += weights[pos];
            }
            (false, false) => sets.free.push(pos),
        }
    }
    sets
}

/// Decide whether the tree admits a proper orientation with maximum
/// inweight at most `k`. Returns the filled tables on yes, `None` on no.
pub fn tree_decide(
    g: &WeightedGraph,
    rt: &RootedTree,
    k: u64,
) -> Result<Option<TreeDPTables>, TreeError> {
    let n = g.n();
    if (k + 1)
        .checked_mul(n as u64)
        .is_none_or(|c| c > MAX_TABLE_CELLS)
    {
        return Err(TreeError::BoundTooLarge { k, n });
    }
    let width = (k + 1) as usize;
    let mut rho = vec![vec![false; width]; n];
    let mut rho_prime = vec![vec![false; width]; n];

    for &v in &rt.post_order {
        let pe_weight = rt.parent_edge[v].map(|e| g.edge(e).w);
        if rt.children[v].is_empty() {
            rho[v][0] = true;
            if let Some(wp) = pe_weight {
                if wp <= k {
                    rho_prime[v][wp as usize] = true;
                }
            }
            continue;
        }
        let children = &rt.children[v];
        let weights: Vec<u64> = children.iter().map(|&(_, e)| g.edge(e).w).collect();
        let rho_counts: Vec<usize> = children
            .iter()
            .map(|&(c, _)| rho[c].iter().filter(|&&b| b).count())
            .collect();
        let rho_prime_counts: Vec<usize> = children
            .iter()
            .map(|&(c, _)| rho_prime[c].iter().filter(|&&b| b).count())
            .collect();
        for w in 0..width {
            let sets = forced_sets(
                children,
                &weights,
                &rho_counts,
                &rho_prime_counts,
                &rho,
                &rho_prime,
                w,
            );
            if sets.clash {
                continue;
            }
            let items: Vec<u64> = sets.free.iter().map(|&p| weights[p]).collect();
            let reach = |target_inweight: u64| -> bool {
                target_inweight
                    .checked_sub(sets.inward_sum)
                    .is_some_and(|l| subset_sum(&items, l).unwrap().is_some())
            };
            if let Some(wp) = pe_weight {
                // final inweight w includes the parent edge, so the
                // subtree orientation must supply w - wp
                rho_prime[v][w] = (w as u64).checked_sub(wp).is_some_and(&reach);
            }
            rho[v][w] = reach(w as u64);
        }
    }
    let yes = rho[rt.root].iter().any(|&b| b);
    Ok(if yes {
        Some(TreeDPTables { k, rho, rho_prime })
    } else {
        None
    })
}

#[derive(Clone, Copy)]
enum Mode {
    /// Parent edge oriented away from the vertex; value is its inweight.
    Rho(usize),
    /// Parent edge oriented toward the vertex; value is its final
    /// inweight including the parent edge weight.
    RhoPrime(usize),
}

/// Top-down witness extraction from yes-tables: re-derive the forced
/// sets and the subset-sum witness at every vertex and hand each child
/// the lowest feasible target distinct from its parent's inweight.
pub fn reconstruct_tree_witness(
    g: &WeightedGraph,
    rt: &RootedTree,
    tables: &TreeDPTables,
) -> Orientation {
    let TreeDPTables { k, rho, rho_prime } = tables;
    let width = (*k + 1) as usize;
    let mut dir = vec![None; g.m()];
    let root_w = (0..width)
        .find(|&w| rho[rt.root][w])
        .expect("tables do not certify a yes-instance");
    let mut stack = vec![(rt.root, Mode::Rho(root_w))];
    while let Some((v, mode)) = stack.pop() {
        let w = match mode {
            Mode::Rho(w) | Mode::RhoPrime(w) => w,
        };
        let subtree_inweight = match mode {
            Mode::Rho(w) => w as u64,
            Mode::RhoPrime(w) => {
                let wp = g.edge(rt.parent_edge[v].unwrap()).w;
                (w as u64) - wp
            }
        };
        let children = &rt.children[v];
        if children.is_empty() {
            debug_assert_eq!(subtree_inweight, 0);
            continue;
        }
        let weights: Vec<u64> = children.iter().map(|&(_, e)| g.edge(e).w).collect();
        let rho_counts: Vec<usize> = children
            .iter()
            .map(|&(c, _)| rho[c].iter().filter(|&&b| b).count())
            .collect();
        let rho_prime_counts: Vec<usize> = children
            .iter()
            .map(|&(c, _)| rho_prime[c].iter().filter(|&&b| b).count())
            .collect();
        let sets = forced_sets(
            children,
            &weights,
            &rho_counts,
            &rho_prime_counts,
            rho,
            rho_prime,
            w,
        );
        assert!(!sets.clash, "reconstruction hit a clashing forced set");
        let items: Vec<u64> = sets.free.iter().map(|&p| weights[p]).collect();
        let target = subtree_inweight
            .checked_sub(sets.inward_sum)
            .expect("negative subset-sum target during reconstruction");
        let witness = subset_sum(&items, target)
            .unwrap()
            .expect("tables certified an entry the subset sum cannot realize");
        let mut toward_v = vec![false; children.len()];
        for &p in &sets.inward {
            toward_v[p] = true;
        }
        for &i in &witness {
            toward_v[sets.free[i]] = true;
        }
        for (pos, &(c, e)) in children.iter().enumerate() {
            let edge = g.edge(e);
            if toward_v[pos] {
                // arc c → v
                dir[e] = Some(edge.u == c);
                let target_w = (0..width)
                    .find(|&x| x != w && rho[c][x])
                    .expect("forced-inward child has no feasible table entry");
                stack.push((c, Mode::Rho(target_w)));
            } else {
                // arc v → c
                dir[e] = Some(edge.u == v);
                let target_w = (0..width)
                    .find(|&x| x != w && rho_prime[c][x])
                    .expect("forced-outward child has no feasible table entry");
                stack.push((c, Mode::RhoPrime(target_w)));
            }
        }
    }
    Orientation::new(
        dir.into_iter()
            .map(|d| d.expect("edge left unoriented"))
            .collect(),
    )
}

/// Exact weighted proper orientation number of a tree with a witness.
/// The decision is monotone in k, so the optimum is located by binary
/// search over k in [K, 4K].
pub fn tree_po(g: &WeightedGraph) -> Result<(u64, Orientation), TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = g.n();
    if n <= 1 {
        return Ok((0, Orientation::new(Vec::new())));
    }
    if n == 2 {
        return Ok((g.edge(0).w, Orientation::new(vec![true])));
    }
    let rt = root_tree(g, None)?;
    let k_max = g
        .max_weight()
        .checked_mul(4)
        .ok_or(TreeError::BoundTooLarge { k: u64::MAX, n })?;
    let mut lo = g.max_weight();
    let mut hi = k_max;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if tree_decide(g, &rt, mid)?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let tables =
        tree_decide(g, &rt, lo)?.expect("the indegree-4 construction guarantees feasibility at 4K");
    let witness = reconstruct_tree_witness(g, &rt, &tables);
    debug_assert!(is_proper(g, &witness));
    debug_assert_eq!(compute_inweights(g, &witness).mu_minus(), lo);
    Ok((lo, witness))
}

/// One peeled vertex of degree >= 3 together with its pending path
/// components, replayed in reverse to extend the orientation.
struct PeelFrame {
    v: VertexId,
    parent: VertexId,
    parent_edge: EdgeId,
    /// Per child: the ordered path hanging below it, starting at the
    /// child itself, with the edges along it.
    children: Vec<ChildPath>,
}

struct ChildPath {
    edge_to_v: EdgeId,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

fn orient_path(dir: &mut [Option<bool>], g: &WeightedGraph, path: &ChildPath, from_even: bool) {
    // from_even: arcs run from even positions (the child's side) to odd
    // positions; otherwise the reverse.
    for (j, &e) in path.edges.iter().enumerate() {
        let tail = if (j % 2 == 0) == from_even {
            path.vertices[j]
        } else {
            path.vertices[j + 1]
        };
        dir[e] = Some(g.edge(e).u == tail);
    }
}

/// A proper orientation of a tree with every indegree at most 4, hence
/// maximum inweight at most 4K. Built by repeatedly detaching the
/// deepest vertex of degree >= 3 together with its hanging paths,
/// orienting the remaining path by bipartition, and replaying the
/// detachments in reverse.
pub fn bound4_orientation(g: &WeightedGraph) -> Result<Orientation, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = g.n();
    if n <= 1 {
        return Ok(Orientation::new(Vec::new()));
    }
    let mut active = vec![true; n];
    let mut active_deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut frames: Vec<PeelFrame> = Vec::new();

    loop {
        // peel while some active vertex has degree >= 3
        if !(0..n).any(|v| active[v] && active_deg[v] >= 3) {
            break;
        }
        // root the active tree at a leaf and take the deepest branching vertex
        let start = (0..n)
            .find(|&v| active[v] && active_deg[v] == 1)
            .expect("an active tree with a branching vertex has a leaf");
        let mut depth = vec![usize::MAX; n];
        let mut par = vec![None; n];
        let mut par_edge = vec![None; n];
        let mut queue = std::collections::VecDeque::from([start]);
        depth[start] = 0;
        while let Some(v) = queue.pop_front() {
            for &(e, u) in g.adj(v) {
                if active[u] && depth[u] == usize::MAX && Some(u) != par[v] {
                    depth[u] = depth[v] + 1;
                    par[u] = Some(v);
                    par_edge[u] = Some(e);
                    queue.push_back(u);
                }
            }
        }
        let v = (0..n)
            .filter(|&x| active[x] && active_deg[x] >= 3)
            .max_by_key(|&x| depth[x])
            .unwrap();
        let parent = par[v].expect("the root is a leaf, so a branching vertex has a parent");
        let parent_edge = par_edge[v].unwrap();

        let mut children = Vec::new();
        for &(e, c) in g.adj(v) {
            if !active[c] || c == parent {
                continue;
            }
            // the component below c is a path: walk it
            let mut vertices = vec![c];
            let mut edges = Vec::new();
            let mut prev = v;
            let mut cur = c;
            loop {
                let next = g.adj(cur).iter().find(|&&(_, u)| active[u] && u != prev);
                match next {
                    Some(&(ne, nu)) => {
                        edges.push(ne);
                        vertices.push(nu);
                        prev = cur;
                        cur = nu;
                    }
                    None => break,
                }
            }
            children.push(ChildPath {
                edge_to_v: e,
                vertices,
                edges,
            });
        }
        // detach v and everything below it
        for path in &children {
            for &x in &path.vertices {
                active[x] = false;
            }
        }
        active[v] = false;
        active_deg[parent] -= 1;
        frames.push(PeelFrame {
            v,
            parent,
            parent_edge,
            children,
        });
    }

    // base case: the remaining active graph is a path (possibly a point)
    let mut dir: Vec<Option<bool>> = vec![None; g.m()];
    let base: Vec<VertexId> = (0..n).filter(|&v| active[v]).collect();
    if base.len() >= 2 {
        let end = *base
            .iter()
            .find(|&&v| active_deg[v] <= 1)
            .expect("a path has an endpoint");
        let mut side = vec![false; n];
        let mut prev = usize::MAX;
        let mut cur = end;
        let mut parity = false;
        loop {
            side[cur] = parity;
            let next = g.adj(cur).iter().find(|&&(_, u)| active[u] && u != prev);
            match next {
                Some(&(e, u)) => {
                    // orient from parity-false side to parity-true side
                    let tail = if parity { u } else { cur };
                    dir[e] = Some(g.edge(e).u == tail);
                    prev = cur;
                    cur = u;
                    parity = !parity;
                }
                None => break,
            }
        }
    }

    // replay the peeled vertices, innermost first
    let inweight_of = |dir: &[Option<bool>], v: VertexId| -> u64 {
        g.adj(v)
            .iter()
            .filter_map(|&(e, _)| {
                let d = dir[e]?;
                let head = if d { g.edge(e).v } else { g.edge(e).u };
                (head == v).then(|| g.edge(e).w)
            })
            .sum()
    };
    while let Some(frame) = frames.pop() {
        let v = frame.v;
        let u = frame.parent;
        let w_uv = g.edge(frame.parent_edge).w;
        // orient the parent edge toward v
        dir[frame.parent_edge] = Some(g.edge(frame.parent_edge).u == u);
        let mut order: Vec<usize> = (0..frame.children.len()).collect();
        order.sort_by(|&a, &b| {
            g.edge(frame.children[b].edge_to_v)
                .w
                .cmp(&g.edge(frame.children[a].edge_to_v).w)
                .then(a.cmp(&b))
        });
        let q = order.len();
        debug_assert!(q >= 2);
        let child_w = |i: usize| g.edge(frame.children[order[i]].edge_to_v).w;
        let c = w_uv + child_w(0) + child_w(1);
        let win_u = inweight_of(&dir, u);

        if win_u != c || q >= 3 {
            let inward_count = if win_u != c { 2 } else { 3 };
            let cv: u64 = w_uv + (0..inward_count).map(child_w).sum::<u64>();
            for (rank, &idx) in order.iter().enumerate() {
                let path = &frame.children[idx];
                let e = path.edge_to_v;
                let wi = g.edge(e).w;
                if rank < inward_count {
                    // arc child → v, path oriented away from the child
                    dir[e] = Some(g.edge(e).u == path.vertices[0]);
                    orient_path(&mut dir, g, path, true);
                } else {
                    // arc v → child
                    dir[e] = Some(g.edge(e).u == v);
                    if path.vertices.len() == 1 {
                        continue;
                    }
                    let w_cx = g.edge(path.edges[0]).w;
                    if w_cx != cv - wi {
                        orient_path(&mut dir, g, path, false);
                    } else {
                        orient_path(&mut dir, g, path, true);
                    }
                }
            }
        } else {
            // win_u == c and q == 2
            let c_val = |rank: usize| {
                let path = &frame.children[order[rank]];
                let wi = g.edge(path.edge_to_v).w;
                if path.vertices.len() >= 2 {
                    wi + g.edge(path.edges[0]).w
                } else {
                    wi
                }
            };
            let (c1, c2) = (c_val(0), c_val(1));
            if c1 != w_uv && c2 != w_uv {
                for &idx in &order[..2] {
                    let path = &frame.children[idx];
                    let e = path.edge_to_v;
                    dir[e] = Some(g.edge(e).u == v);
                    orient_path(&mut dir, g, path, false);
                }
            } else {
                let i = if c1 == w_uv { 0 } else { 1 };
                let j = 1 - i;
                let pi = &frame.children[order[i]];
                dir[pi.edge_to_v] = Some(g.edge(pi.edge_to_v).u == v);
                orient_path(&mut dir, g, pi, false);
                let pj = &frame.children[order[j]];
                dir[pj.edge_to_v] = Some(g.edge(pj.edge_to_v).u == pj.vertices[0]);
                orient_path(&mut dir, g, pj, true);
            }
        }
    }

    let d = Orientation::new(
        dir.into_iter()
            .map(|x| x.expect("edge left unoriented"))
            .collect(),
    );
    debug_assert!(is_proper(g, &d));
    Ok(d)
}
