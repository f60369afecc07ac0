//! Seeded instance generators for tests and benchmarks. All randomness
//! flows through the caller-supplied RNG; use a fixed-seed ChaCha
//! stream for reproducible runs.

use crate::graph::{VertexId, WeightedGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The project-standard deterministic RNG.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight(rng: &mut impl Rng, max_weight: u64) -> u64 {
    rng.gen_range(1..=max_weight.max(1))
}

/// Uniform random attachment tree on `n` vertices with weights in
/// 1..=max_weight.
pub fn random_tree(rng: &mut impl Rng, n: usize, max_weight: u64) -> WeightedGraph {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v, weight(rng, max_weight)));
    }
    WeightedGraph::new(n, &edges).expect("attachment tree is always valid")
}

/// Connected graph on `n` vertices with exactly `m` edges (clamped to
/// the feasible range): a random spanning tree plus random extra edges.
pub fn random_connected_graph(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    max_weight: u64,
) -> WeightedGraph {
    assert!(n >= 1);
    let max_m = n * (n - 1) / 2;
    let m = m.clamp(n.saturating_sub(1), max_m);
    let mut present = std::collections::HashSet::new();
    let mut edges: Vec<(VertexId, VertexId, u64)> = Vec::with_capacity(m);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        present.insert((parent, v));
        edges.push((parent, v, weight(rng, max_weight)));
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            edges.push((key.0, key.1, weight(rng, max_weight)));
        }
    }
    WeightedGraph::new(n, &edges).expect("construction avoids loops and duplicates")
}

/// Random partial 2-tree (treewidth at most 2): grow a 2-tree by
/// attaching each new vertex to both endpoints of a random existing
/// edge, then drop each non-bridging edge independently with
/// probability `drop_prob`, keeping the graph connected.
pub fn random_partial_two_tree(
    rng: &mut impl Rng,
    n: usize,
    drop_prob: f64,
    max_weight: u64,
) -> WeightedGraph {
    assert!(n >= 1);
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    if n >= 2 {
        pairs.push((0, 1));
    }
    for v in 2..n {
        let &(a, b) = &pairs[rng.gen_range(0..pairs.len())];
        pairs.push((a, v));
        pairs.push((b, v));
    }
    // drop pass: remove an edge only if the rest stays connected
    let mut keep: Vec<bool> = vec![true; pairs.len()];
    for i in 0..pairs.len() {
        if rng.gen_bool(drop_prob) {
            keep[i] = false;
            if !connected(n, &pairs, &keep) {
                keep[i] = true;
            }
        }
    }
    let edges: Vec<(VertexId, VertexId, u64)> = pairs
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(a, b), _)| (a, b, weight(rng, max_weight)))
        .collect();
    WeightedGraph::new(n, &edges).expect("2-tree growth avoids loops and duplicates")
}

fn connected(n: usize, pairs: &[(VertexId, VertexId)], keep: &[bool]) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (&(a, b), &k) in pairs.iter().zip(keep) {
        if k {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_trees() {
        let mut rng = rng_from_seed(7);
        for n in 1..40 {
            let g = random_tree(&mut rng, n, 9);
            assert!(g.is_tree() || n == 0);
            assert!(g.edges().iter().all(|e| (1..=9).contains(&e.w)));
        }
    }

    #[test]
    fn connected_graphs_are_connected() {
        let mut rng = rng_from_seed(7);
        for _ in 0..30 {
            let n = rng.gen_range(2..10);
            let m = rng.gen_range(0..12);
            let g = random_connected_graph(&mut rng, n, m, 3);
            assert!(g.is_connected());
            assert!(g.m() >= n - 1);
        }
    }

    #[test]
    fn partial_two_trees_have_small_width() {
        use crate::decomposition::{heuristic_td, validate_td};
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let g = random_partial_two_tree(&mut rng, 15, 0.2, 5);
            assert!(g.is_connected());
            let td = heuristic_td(&g);
            validate_td(&g, &td).unwrap();
            assert!(td.width() <= 2, "width {} too large", td.width());
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let a = random_tree(&mut rng_from_seed(3), 20, 9);
        let b = random_tree(&mut rng_from_seed(3), 20, 9);
        assert_eq!(a.edges(), b.edges());
    }
}
