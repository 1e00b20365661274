//! Deterministic random sampling for tests and verification trials.
//!
//! All randomness flows through ChaCha8 streams so that a `(seed, trial)`
//! pair pins down every sampled matrix exactly, independent of thread
//! scheduling or platform.

use num_complex::Complex64 as C64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ComplexMatrix;

/// Generator for one trial: seed selects the experiment, the stream index
/// selects the trial within it. Streams are independent, so trials can be
/// evaluated in any order (or in parallel) with identical results.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform double in `[0, 1)` with 53 random mantissa bits.
pub fn uniform_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard complex Gaussian sample: independent N(0,1) real and imaginary
/// parts from one Box-Muller transform.
pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    // Shift u1 into (0, 1] so the logarithm is finite.
    let u1 = 1.0 - uniform_f64(rng);
    let u2 = uniform_f64(rng);
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    C64::new(radius * angle.cos(), radius * angle.sin())
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Random positive semidefinite matrix `G* G` with `G` square Gaussian.
/// Almost surely full rank.
pub fn random_psd(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    random_psd_from(n, n, rng)
}

/// Random PSD matrix `G* G` with `G` a `k x n` Gaussian factor, so the
/// result has rank `min(k, n)` almost surely.
pub fn random_psd_from(n: usize, k: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = random_matrix(k, n, rng);
    let prod = &g.adjoint() * &g;
    // Symmetrize away the last-bit rounding asymmetry of the product.
    prod.hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::psd_check;

    #[test]
    fn reproducible_across_calls() {
        let a = random_matrix(3, 3, &mut trial_rng(7, 0));
        let b = random_matrix(3, 3, &mut trial_rng(7, 0));
        assert_eq!(a, b);
        let c = random_matrix(3, 3, &mut trial_rng(7, 1));
        assert_ne!(a, c);
        let d = random_matrix(3, 3, &mut trial_rng(8, 0));
        assert_ne!(a, d);
    }

    #[test]
    fn uniform_stays_in_unit_interval() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..1000 {
            let u = uniform_f64(&mut rng);
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn gaussian_moments_roughly_standard() {
        let mut rng = trial_rng(2, 0);
        let n = 20_000;
        let (mut mean, mut var) = (C64::new(0.0, 0.0), 0.0);
        let samples: Vec<C64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
        for z in &samples {
            mean += z;
        }
        mean /= n as f64;
        for z in &samples {
            var += (z - mean).norm_sqr();
        }
        var /= n as f64;
        // E|z|^2 = 2 for independent N(0,1) parts.
        assert!(mean.norm() < 0.05, "mean {mean}");
        assert!((var - 2.0).abs() < 0.1, "var {var}");
    }

    #[test]
    fn psd_samples_verify() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..10 {
            let m = random_psd(4, &mut rng);
            let (_, ok) = psd_check(&m, 1e-9).unwrap();
            assert!(ok);
        }
        // Rank-1 sample: n-1 of the eigenvalues vanish.
        let m = random_psd_from(3, 1, &mut rng);
        let eig = crate::linalg::hermitian_eigenvalues(&m).unwrap();
        assert!(eig[0].abs() < 1e-12 && eig[1].abs() < 1e-12 && eig[2] > 0.0);
    }
}
