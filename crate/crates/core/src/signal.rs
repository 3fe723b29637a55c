//! Seeded synthetic signals.
//!
//! Random draws come from ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`. Normal variates use `rand_distr`'s
//! `StandardNormal` (ziggurat); uniforms use `rand`'s `Uniform`. With the
//! versions pinned in `Cargo.lock` every generator is a pure function of its
//! parameters and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};

/// Dense row-major matrix, e.g. a grey-level image.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ImageMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidSize(format!("matrix {rows}x{cols} is empty")));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidSize(format!(
                "matrix {rows}x{cols} needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(ImageMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based entry.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    /// Row-major values, matching the vertex order of the grid graphs.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_signal(self) -> Vec<f64> {
        self.data
    }
}

/// Iterates `x_{t+1} = r x_t (1 - x_t)` and returns `x_1, ..., x_n`.
pub fn logistic_map(r: f64, x0: f64, n: usize) -> Result<Vec<f64>> {
    logistic_map_with_burn_in(r, x0, n, 0)
}

/// Like [`logistic_map`] but discards the first `burn_in` iterates.
pub fn logistic_map_with_burn_in(r: f64, x0: f64, n: usize, burn_in: usize) -> Result<Vec<f64>> {
    if !(r > 0.0 && r <= 4.0) {
        return Err(Error::InvalidParameter(format!("logistic parameter r = {r} is outside (0, 4]")));
    }
    if !(x0 > 0.0 && x0 < 1.0) {
        return Err(Error::InvalidParameter(format!("initial value x0 = {x0} is outside (0, 1)")));
    }
    if n == 0 {
        return Err(Error::InvalidSize("logistic series length must be at least 1".into()));
    }
    let mut x = x0;
    let mut out = Vec::with_capacity(n);
    for t in 0..burn_in + n {
        x = r * x * (1.0 - x);
        if t >= burn_in {
            out.push(x);
        }
    }
    Ok(out)
}

/// Deterministic part of the MIX process at 1-based `(i, j)`.
pub fn mix2d_deterministic(i: usize, j: usize) -> f64 {
    use std::f64::consts::PI;
    (2.0 * PI * i as f64 / 12.0).sin() + (2.0 * PI * j as f64 / 12.0).sin()
}

/// MIX(p) image: each cell keeps the sinusoid with probability `1 - p` and
/// is replaced by a uniform draw on `[-sqrt 3, sqrt 3]` otherwise.
///
/// Cells are visited in row-major order and each consumes one `[0, 1)` draw
/// for the Bernoulli choice followed by one uniform draw, whether or not the uniform is used, so the
/// stream layout does not depend on `p`.
pub fn mix2d(p: f64, rows: usize, cols: usize, seed: u64) -> Result<ImageMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("mixing probability {p} is outside [0, 1]")));
    }
    let bound = 3f64.sqrt();
    let uniform = Uniform::new_inclusive(-bound, bound).expect("finite bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            let replaced = rng.random::<f64>() < p;
            let noise = uniform.sample(&mut rng);
            data.push(if replaced { noise } else { mix2d_deterministic(i, j) });
        }
    }
    ImageMatrix::new(rows, cols, data)
}

/// `n` i.i.d. standard normal draws.
pub fn gaussian_noise(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StandardNormal.sample_iter(&mut rng).take(n).collect()
}
