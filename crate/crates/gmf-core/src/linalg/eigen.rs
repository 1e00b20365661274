//! Hermitian eigenvalues via a cyclic Jacobi sweep on the real embedding.
//!
//! A Hermitian matrix `M = X + iY` embeds into the real symmetric matrix
//! `[[X, -Y], [Y, X]]` whose spectrum is that of `M` with every eigenvalue
//! doubled. Jacobi iteration on the embedding is simple, unconditionally
//! stable, and plenty fast at the sizes this crate works with.

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Absolute tolerance scale for the Hermitian-symmetry gate.
///
/// A matrix is accepted as Hermitian when its worst entrywise defect
/// `|m_ij - conj(m_ji)|` is at most `HERMITIAN_TOL * (1 + max |entry|)`.
/// The relative scaling keeps the gate meaningful for matrices whose
/// entries are far from unit size.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// Fails with a validation error when the input is not Hermitian within
/// [`HERMITIAN_TOL`] (relative to the largest entry).
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * (1.0 + m.max_abs()) {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian: worst defect {defect:.3e} at scale {:.3e}",
            m.max_abs()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // Work on the exact Hermitian part so rounding asymmetry inside the
    // tolerance cannot leak into the real embedding.
    let h = m.hermitian_part();
    let mut a = vec![0.0f64; (2 * n) * (2 * n)];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * 2 * n + j] = z.re;
            a[i * 2 * n + (j + n)] = -z.im;
            a[(i + n) * 2 * n + j] = z.im;
            a[(i + n) * 2 * n + (j + n)] = z.re;
        }
    }
    let mut eig = jacobi_symmetric(&mut a, 2 * n);
    eig.sort_by(f64::total_cmp);
    // The embedding doubles each eigenvalue; take every other entry of the
    // sorted list. Pair members agree to a rounding error, so either
    // representative is fine.
    Ok(eig.into_iter().step_by(2).collect())
}

/// Smallest eigenvalue together with the verdict of the positive
/// semidefiniteness test `lambda_min >= -tol * (1 + ||M||_2)`.
///
/// `||M||_2` is the spectral norm, read off the same eigensolve.
pub fn psd_check(m: &ComplexMatrix, tol: f64) -> Result<(f64, bool)> {
    let eig = hermitian_eigenvalues(m)?;
    if eig.is_empty() {
        return Ok((0.0, true));
    }
    let min = eig[0];
    let norm = eig.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    Ok((min, min >= -tol * (1.0 + norm)))
}

/// Cyclic Jacobi eigenvalue iteration on a dense symmetric matrix stored
/// row-major in `a`. Destroys `a`, returns the unsorted eigenvalues.
fn jacobi_symmetric(a: &mut [f64], n: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), n * n);
    let scale: f64 = a.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    if scale == 0.0 {
        return vec![0.0; n];
    }
    // Off-diagonal Frobenius mass shrinks strictly each sweep; 30 cyclic
    // sweeps is far beyond what double precision can use.
    for _ in 0..30 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                // Smaller-angle root of t^2 + 2 t theta - 1 = 0.
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotate rows/columns p and q: A <- J^T A J with
                // J = I + (c-1)(e_p e_p^T + e_q e_q^T) + s(e_p e_q^T - e_q e_p^T).
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cx;

    fn assert_close(xs: &[f64], ys: &[f64], tol: f64) {
        assert_eq!(xs.len(), ys.len());
        for (x, y) in xs.iter().zip(ys) {
            assert!((x - y).abs() <= tol, "{xs:?} vs {ys:?}");
        }
    }

    #[test]
    fn diagonal_matrix() {
        let m = ComplexMatrix::diagonal(&[cx(3.0, 0.0), cx(-1.0, 0.0), cx(2.0, 0.0)]);
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert_close(&eig, &[-1.0, 2.0, 3.0], 1e-14);
    }

    #[test]
    fn real_symmetric_2x2() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert_close(&eig, &[1.0, 3.0], 1e-13);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::new(
            2,
            2,
            vec![cx(2.0, 0.0), cx(0.0, 1.0), cx(0.0, -1.0), cx(2.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert_close(&eig, &[1.0, 3.0], 1e-13);
    }

    #[test]
    fn trace_and_det_agree_3x3() {
        let m = ComplexMatrix::new(
            3,
            3,
            vec![
                cx(4.0, 0.0),
                cx(1.0, 2.0),
                cx(0.5, -0.5),
                cx(1.0, -2.0),
                cx(3.0, 0.0),
                cx(0.0, 1.0),
                cx(0.5, 0.5),
                cx(0.0, -1.0),
                cx(1.0, 0.0),
            ],
        )
        .unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        let trace: f64 = eig.iter().sum();
        assert!((trace - 8.0).abs() < 1e-12);
        let det_from_eig: f64 = eig.iter().product();
        let det = super::super::determinant(&m).unwrap();
        assert!((det.re - det_from_eig).abs() < 1e-10 && det.im.abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn hermitian_gate_is_relative() {
        // Asymmetry of 1e-9 on entries of size 1e5 is rounding noise, not a
        // structural defect; the relative gate must accept it.
        let mut m = ComplexMatrix::from_real_rows(&[vec![1e5, 5e4], vec![5e4, 1e5]]).unwrap();
        m.set(0, 1, cx(5e4 + 1e-9, 0.0));
        assert!(hermitian_eigenvalues(&m).is_ok());
    }

    #[test]
    fn psd_verdicts() {
        let gram = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let (min, ok) = psd_check(&gram, 1e-9).unwrap();
        assert!(ok && min > 0.0);

        let indef = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let (min, ok) = psd_check(&indef, 1e-9).unwrap();
        assert!(!ok && (min + 1.0).abs() < 1e-12);

        // Singular PSD: eigenvalue exactly 0 must pass.
        let rank1 = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let (_, ok) = psd_check(&rank1, 1e-9).unwrap();
        assert!(ok);
    }

    #[test]
    fn zero_dimension() {
        let m = ComplexMatrix::zeros(0, 0);
        assert!(hermitian_eigenvalues(&m).unwrap().is_empty());
        assert!(psd_check(&m, 1e-9).unwrap().1);
    }
}
