//! Spectral and combinatorial heuristics for the largest bipartite subgraph
//! (equivalently MAX-CUT) of a simple undirected graph.
//!
//! Eight methods are provided: local switching, four eigenvector
//! sign-pattern partitions (adjacency, signless Laplacian, Laplacian,
//! normalized Laplacian) and three greedy edge-removal schemes driven by
//! edge bipartivity indices. Each reports the ratio `r_b` of retained to
//! total edges as an exact fraction.

pub mod bipartivity;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod seed;
pub mod spectral;

/// Exact edge ratios.
pub type Fraction = num_rational::Ratio<u64>;

pub use bipartivity::{
    beta_new, beta_original, edge_beta, edge_scores, greedy_remove, EdgeIndex, EdgeScore, RemovalTrace,
};
pub use error::{Error, Result};
pub use experiment::{
    comparison_matrices, ecdf, histogram, run_sweep, ComparisonMatrices, ExperimentRecord, Summary, SweepConfig,
};
pub use generators::{sample_instance, Model, ModelParams, ModelSpec};
pub use graph::{Bipartition, CutReport, Edge, Graph, Side};
pub use oracle::{max_cut_exact, OracleResult};
pub use partition::{eigen_sign_partition, local_switching, movement_routine, run_method, Method, MethodResult};
pub use seed::{derive_seed, rng_from_seed};
pub use spectral::{build_matrix, sym_eigen, GraphMatrix, MatrixKind, Spectrum};
