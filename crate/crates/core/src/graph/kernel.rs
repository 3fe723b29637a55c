use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn euclidean(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Thresholded Gaussian kernel graph.
///
/// `w_ij = exp(-d(i,j)^2 / (2 * sigma1_sq))` when `0 < d(i,j) <= sigma2`,
/// and no edge otherwise. Coincident points are not connected.
pub fn gaussian_kernel_graph<P, D>(
    points: &[P],
    distance: D,
    sigma1_sq: f64,
    sigma2: f64,
) -> Result<Graph>
where
    D: Fn(&P, &P) -> f64,
{
    if points.len() < 2 {
        return Err(Error::InvalidSize(format!(
            "kernel graph needs at least 2 points, got {}",
            points.len()
        )));
    }
    if !(sigma1_sq > 0.0) || !sigma1_sq.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "kernel scale sigma1^2 must be positive and finite, got {sigma1_sq}"
        )));
    }
    if !(sigma2 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kernel cutoff sigma2 must be nonnegative, got {sigma2}"
        )));
    }
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(&points[i], &points[j]);
            if !d.is_finite() || d < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "distance between points {} and {} is {d}",
                    i + 1,
                    j + 1
                )));
            }
            if d > 0.0 && d <= sigma2 {
                let w = (-d * d / (2.0 * sigma1_sq)).exp();
                // Far pairs under a tiny scale underflow to no edge.
                if w > 0.0 {
                    edges.push((i, j, w));
                }
            }
        }
    }
    Ok(Graph::from_edges(n, false, edges)?.with_label(format!(
        "gaussian-kernel(n={n}, sigma1_sq={sigma1_sq}, sigma2={sigma2})"
    )))
}

pub fn gaussian_kernel_graph_2d(points: &[Point2], sigma1_sq: f64, sigma2: f64) -> Result<Graph> {
    gaussian_kernel_graph(points, Point2::euclidean, sigma1_sq, sigma2)
}
