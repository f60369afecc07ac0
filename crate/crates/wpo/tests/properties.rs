//! Randomized invariant checks over generated instances.

use proptest::prelude::*;
use wpo::{
    compute_inweights, emit_graph, emit_orientation, heuristic_td, is_proper, mu_minus, nicefy,
    parse_graph, parse_orientation, subset_sum, tree_po, twdp_po, validate_td, Orientation,
    WeightedGraph,
};

/// A random tree as (parent picks, weights): vertex v+1 attaches to
/// parents[v] % (v+1).
fn tree_strategy(max_n: usize, max_w: u64) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let picks = proptest::collection::vec(0..usize::MAX, n.saturating_sub(1));
        let weights = proptest::collection::vec(1..=max_w, n.saturating_sub(1));
        (picks, weights).prop_map(move |(picks, weights)| {
            let edges: Vec<(usize, usize, u64)> = picks
                .iter()
                .zip(&weights)
                .enumerate()
                .map(|(i, (&p, &w))| (p % (i + 1), i + 1, w))
                .collect();
            WeightedGraph::new(n, &edges).unwrap()
        })
    })
}

/// Connected graph: random tree plus a subset of the remaining pairs.
fn graph_strategy(max_n: usize, max_w: u64) -> impl Strategy<Value = WeightedGraph> {
    (tree_strategy(max_n, max_w), any::<u64>(), 1..=max_w).prop_map(move |(t, extra_bits, w)| {
        let n = t.n();
        let mut edges: Vec<(usize, usize, u64)> =
            t.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        let mut present: std::collections::HashSet<(usize, usize)> = edges
            .iter()
            .map(|&(u, v, _)| (u.min(v), u.max(v)))
            .collect();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if extra_bits >> (bit % 64) & 1 == 1 && present.insert((u, v)) {
                    edges.push((u, v, w));
                }
                bit += 1;
            }
        }
        WeightedGraph::new(n, &edges).unwrap()
    })
}

fn orientation_strategy(m: usize) -> impl Strategy<Value = Orientation> {
    proptest::collection::vec(any::<bool>(), m).prop_map(Orientation::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inweight_conservation_and_reversal(g in graph_strategy(8, 5), bits in any::<u64>()) {
        let d = Orientation::new((0..g.m()).map(|e| bits >> (e % 64) & 1 == 1).collect());
        let profile = compute_inweights(&g, &d);
        let total_in: u64 = profile.inweight.iter().sum();
        let total_out: u64 = profile.outweight.iter().sum();
        prop_assert_eq!(total_in, g.total_weight());
        prop_assert_eq!(total_out, g.total_weight());
        let rev = d.reversed();
        let rp = compute_inweights(&g, &rev);
        prop_assert_eq!(rp.inweight, profile.outweight);
        prop_assert_eq!(rp.outweight, profile.inweight);
    }

    #[test]
    fn tree_po_within_lemma_bounds(g in tree_strategy(24, 6)) {
        prop_assume!(g.m() >= 1);
        let (po, d) = tree_po(&g).unwrap();
        prop_assert!(is_proper(&g, &d));
        prop_assert_eq!(mu_minus(&g, &d), po);
        prop_assert!(po >= g.max_weight());
        prop_assert!(po <= 4 * g.max_weight());
    }

    #[test]
    fn twdp_optimum_is_tight(g in graph_strategy(6, 2)) {
        let ntd = nicefy(&heuristic_td(&g));
        if let Some((po, d)) = twdp_po(&g, &ntd).unwrap() {
            prop_assert!(is_proper(&g, &d));
            prop_assert_eq!(mu_minus(&g, &d), po);
            // nothing strictly better exists
            if po > g.max_weight() {
                prop_assert!(wpo::twdp_decide(&g, po - 1, &ntd).is_none());
            }
        }
    }

    #[test]
    fn heuristic_td_is_always_valid(g in graph_strategy(10, 3)) {
        let td = heuristic_td(&g);
        let width = validate_td(&g, &td).unwrap();
        prop_assert_eq!(width, td.width());
        let ntd = nicefy(&td);
        prop_assert_eq!(validate_td(&g, &ntd.as_td()).unwrap(), ntd.width());
        prop_assert!(ntd.width() <= td.width());
    }

    #[test]
    fn subset_sum_witnesses_are_sound(items in proptest::collection::vec(1u64..=9, 0..10), target in 0u64..40) {
        let got = subset_sum(&items, target).unwrap();
        if let Some(w) = &got {
            let sum: u64 = w.iter().map(|&i| items[i]).sum();
            prop_assert_eq!(sum, target);
            prop_assert!(w.windows(2).all(|p| p[0] < p[1]));
        }
        let expect = (0..1u32 << items.len()).any(|mask| {
            items.iter().enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .sum::<u64>() == target
        });
        prop_assert_eq!(got.is_some(), expect);
    }

    #[test]
    fn file_formats_round_trip(g in graph_strategy(9, 7), d_bits in any::<u64>()) {
        let text = emit_graph(&g, &["generated".into()]);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        let d = Orientation::new((0..g.m()).map(|e| d_bits >> (e % 64) & 1 == 1).collect());
        let od = parse_orientation(&emit_orientation(&g, &d), &g).unwrap();
        for e in 0..g.m() {
            prop_assert_eq!(od.head(&g, e), d.head(&g, e));
        }
    }

    #[test]
    fn random_orientations_never_beat_the_optimum(g in tree_strategy(10, 4), d in orientation_strategy(9)) {
        prop_assume!(g.m() >= 1 && d.len() >= g.m());
        let d = Orientation::new((0..g.m()).map(|e| d.head(&g, e) == g.edge(e).v).collect());
        let (po, _) = tree_po(&g).unwrap();
        if is_proper(&g, &d) {
            prop_assert!(mu_minus(&g, &d) >= po);
        }
    }
}
