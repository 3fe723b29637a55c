//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here reuses the library's aggregation code: walks are enumerated
//! one by one and matrix powers are formed densely.

#![allow(dead_code)]

use std::path::PathBuf;

use peg_core::{build_complete, build_cycle, build_path, build_star, io, Graph};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    fixture_dir().join(rel)
}

/// Every graph with at most 8 vertices in the fixture set, plus a few
/// generated families of the same size.
pub fn small_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut files: Vec<_> = std::fs::read_dir(fixture("graphs"))
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "edges"))
        .collect();
    files.sort();
    for path in files {
        let g = io::read_edge_list(&path).unwrap();
        if g.n() <= 8 {
            out.push((path.file_name().unwrap().to_string_lossy().into_owned(), g));
        }
    }
    out.push(("path(7)".into(), build_path(7, false).unwrap()));
    out.push(("directed-path(6)".into(), build_path(6, true).unwrap()));
    out.push(("cycle(5)".into(), build_cycle(5).unwrap()));
    out.push(("complete(4)".into(), build_complete(4).unwrap()));
    out.push(("star(6)".into(), build_star(6).unwrap()));
    out
}

pub fn test_signal(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 3.0 * (1.3 * i as f64 + 0.2).sin() + (i % 2) as f64 - 0.25)
        .collect()
}

pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    (0..n).map(|i| (0..n).map(|j| g.weight(i, j)).collect()).collect()
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l] != 0.0 {
                for j in 0..n {
                    c[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    c
}

pub fn dense_power(g: &Graph, k: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut p: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let a = dense_adjacency(g);
    for _ in 0..k {
        p = matmul(&p, &a);
    }
    p
}

/// Walk-weighted means and row sums from the dense power `A^k`.
pub fn dense_walk_means(g: &Graph, x: &[f64], k: usize) -> (Vec<Option<f64>>, Vec<f64>) {
    let p = dense_power(g, k);
    let mut means = Vec::new();
    let mut sums = Vec::new();
    for row in &p {
        let s: f64 = row.iter().sum();
        let num: f64 = row.iter().zip(x).map(|(w, v)| w * v).sum();
        means.push((s > 0.0).then(|| num / s));
        sums.push(s);
    }
    (means, sums)
}

/// Set-based means from the support of `A^k`.
pub fn dense_set_means(g: &Graph, x: &[f64], k: usize) -> Vec<Option<f64>> {
    dense_power(g, k)
        .iter()
        .map(|row| {
            let support: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0.0).collect();
            (!support.is_empty())
                .then(|| support.iter().map(|&j| x[j]).sum::<f64>() / support.len() as f64)
        })
        .collect()
}

pub struct Enumerated {
    pub walk_means: Vec<Option<f64>>,
    pub set_means: Vec<Option<f64>>,
    pub weight_sums: Vec<f64>,
    pub support: Vec<usize>,
}

/// Lists every walk of length `k` from every vertex explicitly.
pub fn enumerate_walks(g: &Graph, x: &[f64], k: usize) -> Enumerated {
    fn go(g: &Graph, v: usize, left: usize, w: f64, out: &mut Vec<(usize, f64)>) {
        if left == 0 {
            out.push((v, w));
            return;
        }
        for (u, wu) in g.neighbors(v) {
            go(g, u, left - 1, w * wu, out);
        }
    }
    let mut e = Enumerated {
        walk_means: vec![],
        set_means: vec![],
        weight_sums: vec![],
        support: vec![],
    };
    for i in 0..g.n() {
        let mut ends = Vec::new();
        go(g, i, k, 1.0, &mut ends);
        let total: f64 = ends.iter().map(|&(_, w)| w).sum();
        let num: f64 = ends.iter().map(|&(j, w)| w * x[j]).sum();
        let mut distinct: Vec<usize> = ends.iter().map(|&(j, _)| j).collect();
        distinct.sort_unstable();
        distinct.dedup();
        e.walk_means.push((!ends.is_empty()).then(|| num / total));
        e.set_means.push(
            (!distinct.is_empty())
                .then(|| distinct.iter().map(|&j| x[j]).sum::<f64>() / distinct.len() as f64),
        );
        e.weight_sums.push(total);
        e.support.push(distinct.len());
    }
    e
}

/// `x^T (D - W) x` with a dense Laplacian.
pub fn laplacian_form(g: &Graph, x: &[f64]) -> f64 {
    let a = dense_adjacency(g);
    let n = g.n();
    let mut total = 0.0;
    for i in 0..n {
        let d: f64 = a[i].iter().sum();
        for j in 0..n {
            let l = if i == j { d - a[i][j] } else { -a[i][j] };
            total += x[i] * l * x[j];
        }
    }
    total
}

/// Brute-force `V*`: vertices with at least one walk of exactly `steps` arcs.
pub fn brute_reachable(g: &Graph, steps: usize) -> Vec<usize> {
    let p = dense_power(g, steps);
    (0..g.n()).filter(|&i| p[i].iter().any(|&w| w != 0.0)).collect()
}

pub fn close(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => (a - b).abs() <= tol,
        (None, None) => true,
        _ => false,
    }
}
