//! Brute-force oracles shared by the integration tests.
//!
//! Everything here is written independently of the library under test:
//! permutations are enumerated with Heap's algorithm, signs are computed by
//! inversion counting, and the matrix-function sums are evaluated directly
//! from their defining formula.  Agreement between these oracles and the
//! library is what the tests assert.

// Each integration-test target compiles this module independently and no
// single target uses every oracle.
#![allow(dead_code)]

use gmf_core::C64;
use gmf_core::ComplexMatrix;

/// All permutations of `{0, .., n-1}` in Heap's-algorithm order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap_recurse(n, &mut items, &mut out);
    out
}

fn heap_recurse(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_recurse(k - 1, items, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// `(-1)^inversions` of a permutation in one-line notation.
pub fn inversion_sign(perm: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Weighted permutation sum `Σ_σ w(σ) Π_i a[i][σ(i)]` over the given
/// permutations, the defining formula of a generalized matrix function.
pub fn oracle_weighted_sum(a: &ComplexMatrix, perms: &[Vec<usize>], weights: &[C64]) -> C64 {
    assert_eq!(perms.len(), weights.len());
    let mut total = C64::new(0.0, 0.0);
    for (perm, weight) in perms.iter().zip(weights) {
        let mut product = C64::new(1.0, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            product *= a.get(i, j);
        }
        total += weight * product;
    }
    total
}

/// Determinant by the full signed permutation sum.
pub fn oracle_determinant(a: &ComplexMatrix) -> C64 {
    let perms = all_permutations(a.rows());
    let weights: Vec<C64> = perms
        .iter()
        .map(|p| C64::new(inversion_sign(p), 0.0))
        .collect();
    oracle_weighted_sum(a, &perms, &weights)
}

/// Permanent by the full unsigned permutation sum.
pub fn oracle_permanent(a: &ComplexMatrix) -> C64 {
    let perms = all_permutations(a.rows());
    let weights = vec![C64::new(1.0, 0.0); perms.len()];
    oracle_weighted_sum(a, &perms, &weights)
}

/// Relative error between a computed complex value and its oracle.
pub fn rel_error(computed: C64, oracle: C64) -> f64 {
    (computed - oracle).norm() / (1.0 + oracle.norm())
}
