//! Permutation entropy for signals on graphs.
//!
//! A signal `x` on the vertices of a [`Graph`] is embedded by averaging it
//! over walks of lengths `0, L, ..., (m-1)L` from each vertex. The ordinal
//! patterns of those embedding vectors are counted and their Shannon entropy
//! is the graph permutation entropy. On a directed path it coincides with the
//! classical permutation entropy of a time series.
//!
//! ```
//! use peg_core::{build_cycle, peg, Aggregation};
//!
//! let g = build_cycle(6).unwrap();
//! let x = [0.3, -1.2, 2.0, 0.7, 0.1, -0.4];
//! let r = peg(&g, &x, 3, 1, Aggregation::WalkWeighted).unwrap();
//! assert!(r.normalized >= 0.0 && r.normalized <= 1.0);
//! assert_eq!(r.total(), 6);
//! ```

pub mod entropy;
pub mod error;
pub mod graph;
pub mod io;
pub mod ordinal;
pub mod peg;
pub mod signal;

pub use entropy::{entropy_of_histogram, signal_hash, EntropyResult, PatternHistogram, Provenance};
pub use error::{Error, Result};
pub use graph::{
    build_complete, build_complete_bipartite, build_cycle, build_erdos_renyi, build_family,
    build_grid2d, build_path, build_star, gaussian_kernel_graph, gaussian_kernel_graph_2d,
    reachable_set, walk_aggregate, Aggregation, Family, Graph, Point2, VertexSet, WalkAggregate,
};
pub use ordinal::{factorial, ln_factorial, pattern_of};
pub use peg::{edge_surgery_eligible, embed, pe_time_series, peg, smoothness, EdgeSurgery, EmbeddingMatrix};
pub use signal::{gaussian_noise, logistic_map, logistic_map_with_burn_in, mix2d, ImageMatrix};
