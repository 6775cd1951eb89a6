//! Simple bundles in undirected networks.
//!
//! A *simple bundle* joins a source node to a destination at hop distance `L`
//! through every path that descends the source's breadth-first levels. This
//! crate extracts bundles as leveled DAGs, counts and enumerates their paths,
//! measures their per-level effective width as the exponential entropy of the
//! equilibrium diffusion flow, and aggregates those widths into
//! simple-bundles networks over all node pairs. Seeded generators for
//! orthogonal lattices, perturbed Delaunay lattices and Watts-Strogatz
//! rewirings provide the model networks.

pub mod bundle;
pub mod delaunay;
pub mod error;
pub mod export;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod sbn;

pub use bundle::{
    all_bundles, bundles_at, count_paths, dag_from, enumerate_paths, extract_bundle, leveled_dag,
    LeveledDag, SimpleBundle, DEFAULT_PATH_CAP,
};
pub use delaunay::{delaunay, triangulate, Triangulation};
pub use error::{Error, Result};
pub use flow::{
    analyze, equilibrium_flow, exp_entropy, summarize, transition_matrix, BundleAnalysis,
    BundleSummary, FlowResult, TransitionMatrix,
};
pub use generators::{lattice, perturb_coords, perturbed_delaunay, ws_rewire, GeneratorConfig};
pub use graph::{bfs_hierarchy, Coord, Graph, HierarchyDecomposition, NodeId};
pub use io::{load_graph, save_graph};
pub use sbn::{
    build_sbn, bundle_morphology, signature, spearman, AllPairs, SbnGraph, SignatureRow, Stat,
};
