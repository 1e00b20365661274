//! Deterministic input builders shared by the benchmarks.

use gmf_core::linalg::{random_matrix, random_psd, trial_rng, BlockMatrix, ComplexMatrix};

/// Seeded dense complex matrix.
pub fn seeded_matrix(n: usize, seed: u64) -> ComplexMatrix {
    random_matrix(n, n, &mut trial_rng(seed, 0))
}

/// Seeded positive-semidefinite matrix (Gram construction).
pub fn seeded_psd(n: usize, seed: u64) -> ComplexMatrix {
    random_psd(n, &mut trial_rng(seed, 0))
}

/// Seeded positive-semidefinite block matrix with `m x m` blocks of size
/// `n x n`.
pub fn seeded_blocks(m: usize, n: usize, seed: u64) -> BlockMatrix {
    BlockMatrix::from_flat(&random_psd(m * n, &mut trial_rng(seed, 0)), m)
        .expect("flat side is divisible by the block count")
}
