//! Brute-force ground truth on small instances. Deliberately free of
//! any pruning so that it stays obviously correct.

use crate::graph::{compute_inweights, Orientation, WeightedGraph};
use thiserror::Error;

pub const DEFAULT_EDGE_LIMIT: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {m} edges, brute force limited to {limit}")]
    TooManyEdges { m: usize, limit: usize },
}

fn orientation_from_mask(m: usize, mask: u64) -> Orientation {
    Orientation::new((0..m).map(|i| mask >> i & 1 == 1).collect())
}

/// Exhaustively enumerate all 2^m orientations; among the proper ones
/// return the minimum μ⁻ together with the first witness attaining it
/// (lowest edge-index binary counter). `Ok(None)` means no orientation
/// is proper.
pub fn brute_force_po(
    g: &WeightedGraph,
    limit: usize,
) -> Result<Option<(u64, Orientation)>, OracleError> {
    let m = g.m();
    if m > limit {
        return Err(OracleError::TooManyEdges { m, limit });
    }
    let mut best: Option<(u64, u64)> = None; // (mu, mask)
    for mask in 0..1u64 << m {
        let d = orientation_from_mask(m, mask);
        let profile = compute_inweights(g, &d);
        let proper = g
            .edges()
            .iter()
            .all(|e| profile.inweight[e.u] != profile.inweight[e.v]);
        if proper {
            let mu = profile.mu_minus();
            if best.is_none_or(|(b, _)| mu < b) {
                best = Some((mu, mask));
            }
        }
    }
    Ok(best.map(|(mu, mask)| (mu, orientation_from_mask(m, mask))))
}

/// Minimum Maximum Indegree check: some orientation with μ⁻ ≤ k, no
/// properness requirement. Returns the first such orientation in
/// counter order, if any.
pub fn brute_force_mmi(
    g: &WeightedGraph,
    k: u64,
    limit: usize,
) -> Result<Option<Orientation>, OracleError> {
    let m = g.m();
    if m > limit {
        return Err(OracleError::TooManyEdges { m, limit });
    }
    for mask in 0..1u64 << m {
        let d = orientation_from_mask(m, mask);
        if compute_inweights(g, &d).mu_minus() <= k {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_proper, mu_minus};

    #[test]
    fn unit_triangle_po_is_2() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let (po, d) = brute_force_po(&g, DEFAULT_EDGE_LIMIT).unwrap().unwrap();
        assert_eq!(po, 2);
        assert!(is_proper(&g, &d));
        assert_eq!(mu_minus(&g, &d), 2);
    }

    #[test]
    fn unit_star_po_is_1() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let (po, d) = brute_force_po(&g, DEFAULT_EDGE_LIMIT).unwrap().unwrap();
        assert_eq!(po, 1);
        // all arcs out of the center
        for e in 0..3 {
            assert_eq!(d.tail(&g, e), 0);
        }
    }

    #[test]
    fn single_edge() {
        let g = WeightedGraph::new(2, &[(0, 1, 5)]).unwrap();
        let (po, _) = brute_force_po(&g, DEFAULT_EDGE_LIMIT).unwrap().unwrap();
        assert_eq!(po, 5);
    }

    #[test]
    fn mmi_examples() {
        let g = WeightedGraph::new(2, &[(0, 1, 3)]).unwrap();
        assert!(brute_force_mmi(&g, 3, DEFAULT_EDGE_LIMIT)
            .unwrap()
            .is_some());

        let t = WeightedGraph::new(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        let d = brute_force_mmi(&t, 2, DEFAULT_EDGE_LIMIT).unwrap().unwrap();
        assert!(compute_inweights(&t, &d).mu_minus() <= 2);
        assert!(brute_force_mmi(&t, 1, DEFAULT_EDGE_LIMIT)
            .unwrap()
            .is_none());
    }

    #[test]
    fn respects_edge_limit() {
        let g = WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(
            brute_force_po(&g, 2).unwrap_err(),
            OracleError::TooManyEdges { m: 3, limit: 2 }
        );
    }
}
