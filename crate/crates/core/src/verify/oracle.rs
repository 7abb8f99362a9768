//! Independent path-count oracle.
//!
//! For `n >= 4` every generator of the colimit has degree 0 or at most -1,
//! and the degree-0 generators are exactly one arrow-shaped generator per
//! quiver arrow (`g_e` or `h_e`). Degree-0 words therefore biject with
//! paths of the quiver, so the degree-0 graded dimension up to length `L`
//! must equal the number of paths of length at most `L`, idempotents
//! included. This module counts paths by adjacency matrix powers, sharing
//! no code with the graded-dimension walk it cross-checks.

use crate::quiver::QuiverWithFrozen;
use std::collections::BTreeMap;

fn mat_mul(a: &[Vec<u128>], b: &[Vec<u128>]) -> Vec<Vec<u128>> {
    let k = a.len();
    let mut out = vec![vec![0u128; k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..k {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

/// Number of paths of length at most `max_len` in `q`, length-0 idempotent
/// paths included: `|Q0| + sum_{k=1..L} sum of entries of A^k` for the
/// arrow-count adjacency matrix `A`.
pub fn path_count(q: &QuiverWithFrozen, max_len: usize) -> u128 {
    let k = q.vertices().len();
    let index: BTreeMap<_, _> =
        q.vertices().iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut adjacency = vec![vec![0u128; k]; k];
    for a in q.arrows() {
        adjacency[index[&a.src]][index[&a.tgt]] += 1;
    }
    let mut total = k as u128;
    let mut power: Vec<Vec<u128>> = (0..k)
        .map(|i| (0..k).map(|j| u128::from(i == j)).collect())
        .collect();
    for _ in 1..=max_len {
        power = mat_mul(&power, &adjacency);
        total += power.iter().flatten().sum::<u128>();
    }
    total
}
