//! Graph domains for signals.
//!
//! A [`Graph`] is stored as compressed sparse rows over the out-arcs of every
//! vertex. Undirected graphs keep both orientations of each edge, so row `i`
//! always lists the neighbours a walk can step to from `i`. Rows are sorted by
//! target id, which fixes the floating-point summation order of every
//! aggregation and makes results reproducible.

mod builders;
mod kernel;
mod walk;

pub use builders::{
    build_complete, build_complete_bipartite, build_cycle, build_erdos_renyi, build_family,
    build_grid2d, build_path, build_star, Family,
};
pub use kernel::{gaussian_kernel_graph, gaussian_kernel_graph_2d, Point2};
pub use walk::{reachable_set, walk_aggregate, Aggregation, VertexSet, WalkAggregate};

pub(crate) use walk::{check_signal, walk_means};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Rows above this size are multiplied in parallel.
const PAR_MATVEC_MIN_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    /// Arc weights, parallel to `targets`; empty when every weight is 1.
    weights: Vec<f64>,
    label: String,
}

impl Graph {
    /// Builds a graph from 0-based `(u, v, w)` triples.
    ///
    /// For undirected graphs every edge is given once, in either orientation.
    /// Self-loops, duplicate edges, and weights that are not finite and
    /// strictly positive are rejected. A graph whose weights are all exactly
    /// 1 is treated as unweighted.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut arcs: Vec<(usize, usize, f64)> = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a vertex outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", u + 1)));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has invalid weight {w}",
                    u + 1,
                    v + 1
                )));
            }
            if w == 0.0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has zero weight; omit absent edges instead",
                    u + 1,
                    v + 1
                )));
            }
            arcs.push((u, v, w));
            if !directed {
                arcs.push((v, u, w));
            }
        }
        arcs.sort_by_key(|a| (a.0, a.1));
        for pair in arcs.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                let (u, v) = (pair[0].0 + 1, pair[0].1 + 1);
                return Err(Error::InvalidGraph(if directed {
                    format!("duplicate arc ({u}, {v})")
                } else {
                    format!("duplicate edge {{{}, {}}}", u.min(v), u.max(v))
                }));
            }
        }

        let mut builder = CsrBuilder::with_capacity(n, directed, arcs.len());
        let mut it = arcs.into_iter().peekable();
        for row in 0..n {
            while let Some(&(u, v, w)) = it.peek() {
                if u != row {
                    break;
                }
                builder.push(v, w);
                it.next();
            }
            builder.finish_row();
        }
        Ok(builder.build(format!(
            "custom(n={n}, {})",
            if directed { "directed" } else { "undirected" }
        )))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// True when some edge weight differs from 1.
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Short human-readable description recorded with entropy results.
    pub fn descriptor(&self) -> String {
        format!(
            "{} [n={}, {}={}, {}{}]",
            self.label,
            self.n,
            if self.directed { "arcs" } else { "edges" },
            self.edge_count(),
            if self.directed { "directed" } else { "undirected" },
            if self.weighted { ", weighted" } else { "" }
        )
    }

    /// Number of arcs for directed graphs, number of edges otherwise.
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.targets.len()
        } else {
            self.targets.len() / 2
        }
    }

    /// Out-neighbours of `i` with their weights, sorted by id.
    pub fn neighbors(&self, i: usize) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        let weights = self.weighted.then(|| &self.weights[range.clone()]);
        self.targets[range]
            .iter()
            .enumerate()
            .map(move |(k, &j)| (j, weights.map_or(1.0, |w| w[k])))
    }

    pub(crate) fn neighbor_ids(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        let row = self.neighbor_ids(i);
        match row.binary_search(&j) {
            Ok(pos) if self.weighted => self.weights[self.offsets[i] + pos],
            Ok(_) => 1.0,
            Err(_) => 0.0,
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbor_ids(i).binary_search(&j).is_ok()
    }

    /// First vertex with no incident arcs, if any.
    pub fn first_isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.out_degree(i) == 0)
    }

    /// Edges as 0-based `(u, v, w)`: every arc for directed graphs, and each
    /// undirected edge once with `u < v`. Sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| self.directed || u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// `W y`, one row at a time.
    pub fn matvec(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.n);
        let row = |i: usize| -> f64 {
            let range = self.offsets[i]..self.offsets[i + 1];
            if self.weighted {
                self.targets[range.clone()]
                    .iter()
                    .zip(&self.weights[range])
                    .map(|(&j, &w)| w * y[j])
                    .sum()
            } else {
                self.targets[range].iter().map(|&j| y[j]).sum()
            }
        };
        if self.n >= PAR_MATVEC_MIN_VERTICES {
            (0..self.n).into_par_iter().map(row).collect()
        } else {
            (0..self.n).map(row).collect()
        }
    }

    /// Copy of the graph with undirected edges added and removed, 0-based.
    ///
    /// Added edges get weight 1. Adding an existing edge or removing a missing
    /// one is an error.
    pub fn with_edits(&self, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Result<Graph> {
        let mut edges: Vec<(usize, usize, f64)> = self.edges().collect();
        for &(u, v) in remove {
            let key = if self.directed { (u, v) } else { (u.min(v), u.max(v)) };
            let pos = edges
                .iter()
                .position(|&(a, b, _)| (a, b) == key)
                .ok_or_else(|| {
                    Error::InvalidGraph(format!("cannot remove missing edge ({}, {})", u + 1, v + 1))
                })?;
            edges.swap_remove(pos);
        }
        edges.extend(add.iter().map(|&(u, v)| (u, v, 1.0)));
        Ok(Graph::from_edges(self.n, self.directed, edges)?.with_label(self.label.clone()))
    }
}

/// Row-by-row CSR assembly for builders that already emit sorted rows.
pub(crate) struct CsrBuilder {
    n: usize,
    directed: bool,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    /// Materialized on the first weight other than 1.
    weights: Vec<f64>,
    weighted: bool,
}

impl CsrBuilder {
    pub(crate) fn with_capacity(n: usize, directed: bool, arcs: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        CsrBuilder {
            n,
            directed,
            offsets,
            targets: Vec::with_capacity(arcs),
            weights: Vec::new(),
            weighted: false,
        }
    }

    pub(crate) fn push(&mut self, target: usize, weight: f64) {
        self.targets.push(target);
        if self.weighted {
            self.weights.push(weight);
        } else if weight != 1.0 {
            self.weights = vec![1.0; self.targets.len()];
            *self.weights.last_mut().expect("just pushed") = weight;
            self.weighted = true;
        }
    }

    /// Appends unit-weight arcs.
    pub(crate) fn extend(&mut self, targets: impl IntoIterator<Item = usize>) {
        self.targets.extend(targets);
        if self.weighted {
            self.weights.resize(self.targets.len(), 1.0);
        }
    }

    pub(crate) fn finish_row(&mut self) {
        self.offsets.push(self.targets.len());
    }

    pub(crate) fn build(self, label: String) -> Graph {
        debug_assert_eq!(self.offsets.len(), self.n + 1);
        debug_assert!((0..self.n).all(|i| {
            let row = &self.targets[self.offsets[i]..self.offsets[i + 1]];
            row.windows(2).all(|p| p[0] < p[1]) && row.iter().all(|&j| j != i && j < self.n)
        }));
        Graph {
            n: self.n,
            directed: self.directed,
            weighted: self.weighted,
            offsets: self.offsets,
            targets: self.targets,
            weights: self.weights,
            label,
        }
    }
}
