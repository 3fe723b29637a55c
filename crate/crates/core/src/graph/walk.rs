//! Walk-based neighbourhood aggregation.
//!
//! Two ways of averaging a signal over the vertices reached by walks of
//! length `k` from `i`:
//!
//! * walk-weighted: `(W^k x)_i / (W^k 1)_i`, every walk contributes its weight
//!   (its multiplicity on unweighted graphs);
//! * set-based: the plain mean of `x_j` over the distinct endpoints `j` of
//!   `k`-walks from `i`, i.e. the support of row `i` of `A^k`.
//!
//! Both agree at `k = 1` on unweighted graphs. Powers of the adjacency matrix
//! are never formed: walk-weighted values come from `k` sparse products and
//! set-based values from a frontier expansion per vertex.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Aggregation {
    #[default]
    #[serde(rename = "walk")]
    WalkWeighted,
    #[serde(rename = "set")]
    SetBased,
}

impl Aggregation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Aggregation::WalkWeighted => "walk",
            Aggregation::SetBased => "set",
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "walk" => Ok(Aggregation::WalkWeighted),
            "set" => Ok(Aggregation::SetBased),
            other => Err(Error::InvalidParameter(format!(
                "unknown aggregation mode {other:?} (expected \"walk\" or \"set\")"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkAggregate {
    pub k: usize,
    pub mode: Aggregation,
    /// `None` where no walk of length `k` leaves the vertex.
    pub values: Vec<Option<f64>>,
    /// `|N_k(i)|`, the number of distinct endpoints.
    pub support_size: Vec<usize>,
    /// `deg^k(i)`, the row sum of `W^k`. Saturates to infinity for walk
    /// counts beyond the `f64` range; `values` stay finite in that case.
    pub weight_sum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    included: Vec<bool>,
}

impl VertexSet {
    pub fn contains(&self, i: usize) -> bool {
        self.included[i]
    }

    pub fn len(&self) -> usize {
        self.included.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.included.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.included
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn as_flags(&self) -> &[bool] {
        &self.included
    }
}

/// Vertices from which some walk of exactly `steps` arcs starts.
///
/// Computed backwards: a vertex has a `s`-walk iff one of its out-neighbours
/// has an `(s-1)`-walk. Undirected vertices with a neighbour always qualify
/// by walking one edge back and forth.
pub fn reachable_set(g: &Graph, steps: usize) -> VertexSet {
    let mut current = vec![true; g.n()];
    for _ in 0..steps {
        let next: Vec<bool> = (0..g.n())
            .map(|i| g.neighbor_ids(i).iter().any(|&j| current[j]))
            .collect();
        if next == current {
            break;
        }
        current = next;
    }
    VertexSet { included: current }
}

pub fn walk_aggregate(g: &Graph, x: &[f64], k: usize, mode: Aggregation) -> Result<WalkAggregate> {
    check_signal(g, x)?;
    check_mode(g, mode)?;
    let walk = walk_weighted(g, x, &[k]);
    let sets = set_expansion(g, x, &[k]);
    let support_size: Vec<usize> = sets.iter().map(|per| per[0].0).collect();
    let values = match mode {
        Aggregation::WalkWeighted => walk.values.into_iter().next().unwrap(),
        Aggregation::SetBased => sets.iter().map(|per| per[0].1).collect(),
    };
    Ok(WalkAggregate {
        k,
        mode,
        values,
        support_size,
        weight_sum: walk.weight_sums.into_iter().next().unwrap(),
    })
}

pub(crate) fn check_signal(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::InvalidSignal(format!(
            "signal has {} values but the graph has {} vertices",
            x.len(),
            g.n()
        )));
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSignal(format!(
            "value at vertex {} is not finite ({})",
            i + 1,
            x[i]
        )));
    }
    Ok(())
}

fn check_mode(g: &Graph, mode: Aggregation) -> Result<()> {
    if mode == Aggregation::SetBased && g.is_weighted() {
        return Err(Error::UnsupportedMode(
            "set-based aggregation is only defined for unweighted graphs".into(),
        ));
    }
    Ok(())
}

/// Aggregated values at several walk lengths, indexed `[length][vertex]`.
pub(crate) struct WalkMeans {
    pub values: Vec<Vec<Option<f64>>>,
}

/// `lengths` must be strictly increasing.
pub(crate) fn walk_means(
    g: &Graph,
    x: &[f64],
    lengths: &[usize],
    mode: Aggregation,
) -> Result<WalkMeans> {
    check_mode(g, mode)?;
    debug_assert!(lengths.windows(2).all(|p| p[0] < p[1]));
    let values = match mode {
        Aggregation::WalkWeighted => walk_weighted(g, x, lengths).values,
        Aggregation::SetBased => {
            let sets = set_expansion(g, x, lengths);
            (0..lengths.len())
                .map(|li| sets.iter().map(|per| per[li].1).collect())
                .collect()
        }
    };
    Ok(WalkMeans { values })
}

struct WalkWeighted {
    values: Vec<Vec<Option<f64>>>,
    weight_sums: Vec<Vec<f64>>,
}

/// Keeps the walk weights inside `[2^-RESCALE_EXP, 2^RESCALE_EXP]`.
const RESCALE_EXP: i32 = 64;

fn walk_weighted(g: &Graph, x: &[f64], lengths: &[usize]) -> WalkWeighted {
    let n = g.n();
    let mut numer = x.to_vec();
    let mut denom = vec![1.0; n];
    // numer and denom are scaled by 2^-log2_scale together, which is exact
    // and leaves their ratio untouched.
    let mut log2_scale = 0i32;
    let mut out = WalkWeighted {
        values: Vec::with_capacity(lengths.len()),
        weight_sums: Vec::with_capacity(lengths.len()),
    };
    let mut record = |numer: &[f64], denom: &[f64], log2_scale: i32| {
        let values = numer
            .iter()
            .zip(denom)
            .map(|(&z, &d)| (d > 0.0).then(|| z / d))
            .collect();
        let scale = 2f64.powi(log2_scale);
        out.values.push(values);
        out.weight_sums
            .push(denom.iter().map(|&d| if d > 0.0 { d * scale } else { 0.0 }).collect());
    };

    let max_len = lengths.last().copied().unwrap_or(0);
    let mut next_len = lengths.iter().peekable();
    if next_len.peek() == Some(&&0) {
        record(&numer, &denom, 0);
        next_len.next();
    }
    for step in 1..=max_len {
        numer = g.matvec(&numer);
        denom = g.matvec(&denom);
        let peak = denom.iter().copied().fold(0.0, f64::max);
        if peak > 0.0 {
            let e = peak.log2().floor() as i32;
            if e.abs() > RESCALE_EXP {
                let factor = 2f64.powi(-e);
                numer.iter_mut().for_each(|v| *v *= factor);
                denom.iter_mut().for_each(|v| *v *= factor);
                log2_scale += e;
            }
        }
        if next_len.peek() == Some(&&step) {
            record(&numer, &denom, log2_scale);
            next_len.next();
        }
    }
    out
}

/// Distinct-endpoint expansion. Returns `[vertex][length] -> (|N_k(i)|, mean)`.
fn set_expansion(g: &Graph, x: &[f64], lengths: &[usize]) -> Vec<Vec<(usize, Option<f64>)>> {
    let n = g.n();
    let max_len = lengths.last().copied().unwrap_or(0);
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u64; n], 0u64, Vec::new()),
            |(mark, stamp, next), i| {
                let mut out = Vec::with_capacity(lengths.len());
                let mut pending = lengths.iter().peekable();
                if pending.peek() == Some(&&0) {
                    out.push((1, Some(x[i])));
                    pending.next();
                }
                let mut frontier = vec![i];
                for step in 1..=max_len {
                    if frontier.is_empty() {
                        break;
                    }
                    *stamp += 1;
                    next.clear();
                    for &u in &frontier {
                        for &v in g.neighbor_ids(u) {
                            if mark[v] != *stamp {
                                mark[v] = *stamp;
                                next.push(v);
                            }
                        }
                    }
                    next.sort_unstable();
                    std::mem::swap(&mut frontier, next);
                    if pending.peek() == Some(&&step) {
                        let mean = (!frontier.is_empty()).then(|| {
                            frontier.iter().map(|&j| x[j]).sum::<f64>() / frontier.len() as f64
                        });
                        out.push((frontier.len(), mean));
                        pending.next();
                    }
                }
                // Lengths past a dead end have empty supports.
                out.resize(lengths.len(), (0, None));
                out
            },
        )
        .collect()
}
