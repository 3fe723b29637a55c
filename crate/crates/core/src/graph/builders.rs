//! Deterministic graph families.
//!
//! Vertex ids are 0-based here; vertex `i` is labelled `i + 1` on disk.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CsrBuilder, Graph};
use crate::error::{Error, Result};

/// Families selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle,
    Complete,
    /// Star with its centre on the first vertex.
    Star,
    CompleteBipartite { left: usize, right: usize },
}

/// Builds a family member on `n` vertices. For `CompleteBipartite` the part
/// sizes are taken from the variant and `n` must equal their sum.
pub fn build_family(kind: Family, n: usize) -> Result<Graph> {
    match kind {
        Family::Cycle => build_cycle(n),
        Family::Complete => build_complete(n),
        Family::Star => build_star(n),
        Family::CompleteBipartite { left, right } => {
            if left + right != n {
                return Err(Error::InvalidSize(format!(
                    "complete bipartite parts {left} + {right} do not sum to n = {n}"
                )));
            }
            build_complete_bipartite(left, right)
        }
    }
}

fn require_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidSize(format!("{what} needs at least {min} vertices, got {n}")));
    }
    Ok(())
}

/// Path `1 - 2 - ... - n`; arcs point from `i` to `i + 1` when directed.
pub fn build_path(n: usize, directed: bool) -> Result<Graph> {
    require_at_least(n, 2, "path")?;
    let mut b = CsrBuilder::with_capacity(n, directed, 2 * n);
    for i in 0..n {
        if !directed && i > 0 {
            b.push(i - 1, 1.0);
        }
        if i + 1 < n {
            b.push(i + 1, 1.0);
        }
        b.finish_row();
    }
    Ok(b.build(format!(
        "{}path(n={n})",
        if directed { "directed-" } else { "" }
    )))
}

pub fn build_cycle(n: usize) -> Result<Graph> {
    require_at_least(n, 3, "cycle")?;
    let edges = (0..n).map(|i| (i, (i + 1) % n, 1.0));
    Ok(Graph::from_edges(n, false, edges)?.with_label(format!("cycle(n={n})")))
}

pub fn build_complete(n: usize) -> Result<Graph> {
    require_at_least(n, 2, "complete graph")?;
    let mut b = CsrBuilder::with_capacity(n, false, n * (n - 1));
    for i in 0..n {
        b.extend((0..n).filter(|&j| j != i));
        b.finish_row();
    }
    Ok(b.build(format!("complete(n={n})")))
}

pub fn build_star(n: usize) -> Result<Graph> {
    require_at_least(n, 2, "star")?;
    build_complete_bipartite(1, n - 1).map(|g| g.with_label(format!("star(n={n})")))
}

/// Complete bipartite graph with parts `{1..left}` and `{left+1..left+right}`.
pub fn build_complete_bipartite(left: usize, right: usize) -> Result<Graph> {
    if left == 0 || right == 0 {
        return Err(Error::InvalidSize(format!(
            "complete bipartite parts must be nonempty, got ({left}, {right})"
        )));
    }
    let n = left + right;
    let mut b = CsrBuilder::with_capacity(n, false, 2 * left * right);
    for i in 0..n {
        b.extend(if i < left { left..n } else { 0..left });
        b.finish_row();
    }
    Ok(b.build(format!("complete-bipartite({left},{right})")))
}

/// King-move grid, vertices in row-major order with vertex 1 at the top left.
///
/// Directed grids orient every arc away from the top-left corner: each cell
/// points to its East, South, South-East and South-West neighbours.
///
/// ```text
///   1 ──> 2 ──> 3
///   │ ╲ ╱ │ ╲ ╱ │
///   v  X  v  X  v
///   4 ──> 5 ──> 6
/// ```
///
/// A single row or column is therefore a directed path.
pub fn build_grid2d(rows: usize, cols: usize, directed: bool) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::InvalidSize(format!(
            "grid {rows}x{cols} needs at least 2 cells"
        )));
    }
    let n = rows * cols;
    let id = |r: usize, c: usize| r * cols + c;
    let mut b = CsrBuilder::with_capacity(n, directed, if directed { 4 * n } else { 8 * n });
    for r in 0..rows {
        for c in 0..cols {
            let mut row: Vec<usize> = Vec::with_capacity(8);
            // Out-arcs: E, S, SE, SW.
            if c + 1 < cols {
                row.push(id(r, c + 1));
            }
            if r + 1 < rows {
                row.push(id(r + 1, c));
                if c + 1 < cols {
                    row.push(id(r + 1, c + 1));
                }
                if c > 0 {
                    row.push(id(r + 1, c - 1));
                }
            }
            if !directed {
                // Reverse arcs: W, N, NW, NE.
                if c > 0 {
                    row.push(id(r, c - 1));
                }
                if r > 0 {
                    row.push(id(r - 1, c));
                    if c > 0 {
                        row.push(id(r - 1, c - 1));
                    }
                    if c + 1 < cols {
                        row.push(id(r - 1, c + 1));
                    }
                }
            }
            row.sort_unstable();
            b.extend(row);
            b.finish_row();
        }
    }
    Ok(b.build(format!(
        "{}grid({rows}x{cols})",
        if directed { "directed-" } else { "" }
    )))
}

/// G(n, p) with one Bernoulli draw (`u < p`, `u` uniform on `[0, 1)`) per pair, pairs visited as
/// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
///
/// The stream comes from ChaCha8 seeded with `seed` through
/// `SeedableRng::seed_from_u64`, so the output is fixed for a given seed.
pub fn build_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} is outside [0, 1]")));
    }
    require_at_least(n, 1, "Erdos-Renyi graph")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                // Both rows receive ids in increasing order.
                rows[i].push(j);
                rows[j].push(i);
            }
        }
    }
    let arcs = rows.iter().map(Vec::len).sum();
    let mut b = CsrBuilder::with_capacity(n, false, arcs);
    for row in rows {
        b.extend(row);
        b.finish_row();
    }
    Ok(b.build(format!("erdos-renyi(n={n}, p={p}, seed={seed})")))
}
