//! Ordinal patterns and their Lehmer-code indices.
//!
//! The pattern of a vector is the permutation that sorts it ascending, with
//! equal values kept in their original order. A constant vector therefore maps
//! to the identity. Ties compare with exact floating-point equality; quantize
//! noisy data beforehand if near-equal values should count as ties.
//!
//! Patterns are numbered by the Lehmer code of that permutation, so the
//! identity is 0 and the full reversal is `m! - 1`.

use crate::error::{Error, Result};

pub const MIN_DIMENSION: usize = 2;
pub const MAX_DIMENSION: usize = 12;

const FACTORIALS: [u64; MAX_DIMENSION + 1] = {
    let mut f = [1u64; MAX_DIMENSION + 1];
    let mut i = 1;
    while i <= MAX_DIMENSION {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

pub fn factorial(m: usize) -> u64 {
    FACTORIALS[m]
}

/// `ln(m!)`, the largest possible permutation entropy.
pub fn ln_factorial(m: usize) -> f64 {
    (factorial(m) as f64).ln()
}

pub(crate) fn check_dimension(m: usize) -> Result<()> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension {m} is outside [{MIN_DIMENSION}, {MAX_DIMENSION}]"
        )));
    }
    Ok(())
}

/// Pattern index of `v` in `[0, m!)`.
pub fn pattern_of(v: &[f64]) -> Result<u64> {
    check_dimension(v.len())?;
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidVector(format!("entry {} is not finite ({})", i + 1, v[i])));
    }
    Ok(pattern_index(v))
}

/// Unchecked variant of [`pattern_of`] for the hot loop.
pub(crate) fn pattern_index(v: &[f64]) -> u64 {
    let mut order = [0usize; MAX_DIMENSION];
    let order = &mut order[..v.len()];
    argsort_into(v, order);
    lehmer_rank(order)
}

/// Stable ascending argsort; insertion sort is fastest at these sizes.
fn argsort_into(v: &[f64], order: &mut [usize]) {
    for (slot, i) in order.iter_mut().zip(0..) {
        *slot = i;
    }
    for i in 1..order.len() {
        let cur = order[i];
        let mut j = i;
        // Strict comparison keeps equal values in index order.
        while j > 0 && v[order[j - 1]] > v[cur] {
            order[j] = order[j - 1];
            j -= 1;
        }
        order[j] = cur;
    }
}

/// Sorting permutation of `v`, 0-based: `v[p[0]] <= v[p[1]] <= ...`.
pub fn argsort_stable(v: &[f64]) -> Vec<usize> {
    let mut order = vec![0; v.len()];
    argsort_into(v, &mut order);
    order
}

/// Lehmer code of a permutation of `0..m`.
pub fn lehmer_rank(perm: &[usize]) -> u64 {
    let m = perm.len();
    let mut code = 0u64;
    for i in 0..m {
        let smaller_after = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count() as u64;
        code += smaller_after * FACTORIALS[m - 1 - i];
    }
    code
}

/// Inverse of [`lehmer_rank`].
pub fn lehmer_unrank(mut code: u64, m: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut perm = Vec::with_capacity(m);
    for i in 0..m {
        let f = FACTORIALS[m - 1 - i];
        let pick = (code / f) as usize;
        code %= f;
        perm.push(pool.remove(pick));
    }
    perm
}

/// Index of the reversed permutation. Negating a vector without ties maps
/// its pattern to this one.
pub fn reverse_pattern(code: u64, m: usize) -> u64 {
    let mut perm = lehmer_unrank(code, m);
    perm.reverse();
    lehmer_rank(&perm)
}

/// Whether any two entries of `v` are exactly equal.
pub fn has_ties(v: &[f64]) -> bool {
    (0..v.len()).any(|i| v[i + 1..].contains(&v[i]))
}
