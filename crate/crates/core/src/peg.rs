//! Permutation entropy of graph signals.
//!
//! Each retained vertex `i` gets the embedding vector
//! `(y_i^0, y_i^L, ..., y_i^{(m-1)L})`, where `y_i^k` is the signal averaged
//! over walks of length `k` from `i` (see [`crate::graph::walk_aggregate`]).
//! The entropy is the Shannon entropy of the ordinal patterns of those rows.
//!
//! Undirected graphs keep every vertex and must have no isolated vertex.
//! Directed graphs keep the vertices with at least one outgoing walk of
//! length `(m-1)L`; on a directed path this reproduces the classical
//! sliding-window embedding exactly.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::entropy::{entropy_with_provenance, signal_hash, EntropyResult, PatternHistogram, Provenance};
use crate::error::{Error, Result};
use crate::graph::{check_signal, reachable_set, walk_means, Aggregation, Graph};
use crate::ordinal::{check_dimension, has_ties, pattern_index};

pub const MAX_DELAY: usize = 64;

/// Rows per parallel work item when building histograms.
const ROWS_PER_CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    m: usize,
    delay: usize,
    rows: Vec<f64>,
    vertex_ids: Vec<usize>,
}

impl EmbeddingMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delay(&self) -> usize {
        self.delay
    }

    /// Number of retained vertices.
    pub fn len(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    /// Retained vertices, 0-based, increasing.
    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    /// Embedding vector of the `r`-th retained vertex.
    pub fn row(&self, r: usize) -> &[f64] {
        &self.rows[r * self.m..(r + 1) * self.m]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.rows.chunks_exact(self.m)
    }

    /// Histogram of row patterns plus the number of rows containing ties.
    pub fn pattern_histogram(&self) -> (PatternHistogram, u64) {
        let m = self.m;
        self.rows
            .par_chunks(m * ROWS_PER_CHUNK)
            .map(|chunk| {
                let mut h = PatternHistogram::new(m).expect("dimension checked at construction");
                let mut ties = 0u64;
                for row in chunk.chunks_exact(m) {
                    h.add(pattern_index(row));
                    ties += u64::from(has_ties(row));
                }
                (h, ties)
            })
            .reduce(
                || (PatternHistogram::new(m).expect("dimension checked at construction"), 0),
                |(mut a, ta), (b, tb)| {
                    a.merge(&b);
                    (a, ta + tb)
                },
            )
    }
}

fn check_delay(delay: usize) -> Result<()> {
    if !(1..=MAX_DELAY).contains(&delay) {
        return Err(Error::InvalidParameter(format!(
            "delay {delay} is outside [1, {MAX_DELAY}]"
        )));
    }
    Ok(())
}

fn check_embedding_params(m: usize, delay: usize) -> Result<()> {
    check_dimension(m)?;
    check_delay(delay)?;
    if !(3..=7).contains(&m) {
        // Once per dimension: sweeps would otherwise repeat it per call.
        static WARNED: AtomicU32 = AtomicU32::new(0);
        let bit = 1u32 << m;
        if WARNED.fetch_or(bit, Ordering::Relaxed) & bit == 0 {
            log::warn!("embedding dimension {m} is outside the usual range 3..=7");
        }
    }
    Ok(())
}

pub fn embed(
    g: &Graph,
    x: &[f64],
    m: usize,
    delay: usize,
    mode: Aggregation,
) -> Result<EmbeddingMatrix> {
    check_embedding_params(m, delay)?;
    check_signal(g, x)?;

    let retained: Vec<usize> = if g.is_directed() {
        let domain = reachable_set(g, (m - 1) * delay);
        if domain.is_empty() {
            return Err(Error::EmptyDomain(format!(
                "no vertex starts a directed walk of length {}",
                (m - 1) * delay
            )));
        }
        domain.iter().collect()
    } else {
        if let Some(i) = g.first_isolated_vertex() {
            return Err(Error::IsolatedVertex { vertex: i + 1 });
        }
        (0..g.n()).collect()
    };

    let lengths: Vec<usize> = (0..m).map(|k| k * delay).collect();
    let means = walk_means(g, x, &lengths, mode)?;

    let mut rows = Vec::with_capacity(retained.len() * m);
    for &i in &retained {
        for (k, per_vertex) in means.values.iter().enumerate() {
            match per_vertex[i] {
                Some(v) if v.is_finite() => rows.push(v),
                _ => {
                    return Err(Error::NonFiniteAggregate {
                        vertex: i + 1,
                        length: lengths[k],
                    })
                }
            }
        }
    }
    Ok(EmbeddingMatrix {
        m,
        delay,
        rows,
        vertex_ids: retained,
    })
}

/// Permutation entropy of the signal `x` on `g`.
pub fn peg(g: &Graph, x: &[f64], m: usize, delay: usize, mode: Aggregation) -> Result<EntropyResult> {
    let embedding = embed(g, x, m, delay, mode)?;
    let (histogram, tied_vectors) = embedding.pattern_histogram();
    entropy_with_provenance(
        histogram,
        Provenance {
            delay,
            mode: Some(mode),
            graph: g.descriptor(),
            signal_hash: signal_hash(x),
            tied_vectors,
        },
    )
}

/// Classical permutation entropy over sliding windows
/// `(x_i, x_{i+L}, ..., x_{i+(m-1)L})`.
pub fn pe_time_series(x: &[f64], m: usize, delay: usize) -> Result<EntropyResult> {
    check_embedding_params(m, delay)?;
    let span = (m - 1) * delay;
    if x.len() <= span {
        return Err(Error::InvalidSize(format!(
            "series of length {} is too short for m = {m}, L = {delay} (needs at least {})",
            x.len(),
            span + 1
        )));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSignal(format!("sample {} is not finite ({})", i + 1, x[i])));
    }
    let windows = x.len() - span;
    let (histogram, tied_vectors) = (0..windows)
        .into_par_iter()
        .fold(
            || (PatternHistogram::new(m).expect("dimension checked above"), 0u64),
            |(mut h, ties), i| {
                let mut w = [0.0; crate::ordinal::MAX_DIMENSION];
                let w = &mut w[..m];
                for (j, slot) in w.iter_mut().enumerate() {
                    *slot = x[i + j * delay];
                }
                h.add(pattern_index(w));
                (h, ties + u64::from(has_ties(w)))
            },
        )
        .reduce(
            || (PatternHistogram::new(m).expect("dimension checked above"), 0),
            |(mut a, ta), (b, tb)| {
                a.merge(&b);
                (a, ta + tb)
            },
        );
    entropy_with_provenance(
        histogram,
        Provenance {
            delay,
            mode: None,
            graph: format!("time-series(n={})", x.len()),
            signal_hash: signal_hash(x),
            tied_vectors,
        },
    )
}

/// `(1/2) sum_{i~j} w_ij (x_i - x_j)^2`, i.e. one term per undirected edge.
pub fn smoothness(g: &Graph, x: &[f64]) -> Result<f64> {
    if g.is_directed() {
        return Err(Error::Unsupported(
            "smoothness is a quadratic form of a symmetric Laplacian; the graph is directed".into(),
        ));
    }
    check_signal(g, x)?;
    Ok(g.edges()
        .map(|(u, v, w)| {
            let d = x[u] - x[v];
            w * d * d
        })
        .sum())
}

/// Edge changes that leave the `m = 2, L = 1` pattern histogram unchanged.
///
/// Vertices are split by comparing `x_i` with the mean of its neighbours:
/// `minima` lie strictly below it, `maxima` strictly above, and vertices equal
/// to it belong to neither. Pairs are 0-based `(maximum, minimum)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSurgery {
    pub minima: Vec<usize>,
    pub maxima: Vec<usize>,
    /// Non-edges `(b, a)` with `x_a < x_b`; any subset can be added.
    pub addable: Vec<(usize, usize)>,
    /// Edges `(b, a)` with `x_b < x_a`; any subset can be removed.
    pub removable: Vec<(usize, usize)>,
}

pub fn edge_surgery_eligible(g: &Graph, x: &[f64]) -> Result<EdgeSurgery> {
    if g.is_directed() || g.is_weighted() {
        return Err(Error::Unsupported(
            "edge surgery needs a simple undirected unweighted graph".into(),
        ));
    }
    check_signal(g, x)?;
    if let Some(i) = g.first_isolated_vertex() {
        return Err(Error::IsolatedVertex { vertex: i + 1 });
    }
    let means = walk_means(g, x, &[1], Aggregation::WalkWeighted)?;
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for (i, mean) in means.values[0].iter().enumerate() {
        let mean = mean.expect("no isolated vertices");
        if x[i] < mean {
            minima.push(i);
        } else if x[i] > mean {
            maxima.push(i);
        }
    }
    let mut addable = Vec::new();
    let mut removable = Vec::new();
    for &b in &maxima {
        for &a in &minima {
            let joined = g.has_edge(a, b);
            if !joined && x[a] < x[b] {
                addable.push((b, a));
            } else if joined && x[b] < x[a] {
                removable.push((b, a));
            }
        }
    }
    Ok(EdgeSurgery {
        minima,
        maxima,
        addable,
        removable,
    })
}
