//! Exact solvers for the weighted proper orientation number.
//!
//! A proper orientation of an edge-weighted graph assigns a direction
//! to every edge so that adjacent vertices receive distinct inweights
//! (sums of weights on incoming arcs). The weighted proper orientation
//! number is the least achievable maximum inweight. This crate provides
//! a linear-style dynamic program for trees, a treewidth dynamic
//! program for general graphs, brute-force oracles for validation,
//! hardness reductions from subset sum, and supporting infrastructure
//! (file formats, random instance generators, tree decompositions).

pub mod decomposition;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod subsetsum;
pub mod tree;
pub mod twdp;

pub use decomposition::{
    heuristic_td, nicefy, validate_td, NiceTreeDecomposition, NodeKind, TdError, TreeDecomposition,
};
pub use graph::{
    bipartition_orientation, compute_inweights, is_proper, mu_minus, Edge, EdgeId, GraphError,
    InweightProfile, Orientation, VertexId, WeightedGraph,
};
pub use io::{emit_graph, emit_orientation, parse_graph, parse_orientation, parse_td, ParseError};
pub use oracle::{brute_force_mmi, brute_force_po, OracleError, DEFAULT_EDGE_LIMIT};
pub use random::{random_connected_graph, random_partial_two_tree, random_tree, rng_from_seed};
pub use reductions::{
    enforce_star_property, evenize, mmi_reduce_full, mmi_to_wpo, subsetsum_to_tree, EdgeGadget,
    MmiInstance, Provenance, ReductionError, WpoInstance,
};
pub use subsetsum::{subset_sum, SubsetSumError};
pub use tree::{bound4_orientation, root_tree, tree_decide, tree_po, RootedTree, TreeError};
pub use twdp::{twdp_decide, twdp_po};
