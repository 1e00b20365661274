//! Determinant, Cholesky factorization, and triangular inversion.

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Determinant via LU elimination with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<C64> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut a: Vec<C64> = m.entries().to_vec();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        // Partial pivoting: bring the largest remaining entry of column k
        // to the diagonal.
        let mut pivot_row = k;
        let mut pivot_mag = a[k * n + k].norm();
        for r in (k + 1)..n {
            let mag = a[r * n + k].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for r in (k + 1)..n {
            let factor = a[r * n + k] / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for c in (k + 1)..n {
                let update = factor * a[k * n + c];
                a[r * n + c] -= update;
            }
        }
    }
    Ok(det)
}

/// Upper-triangular Cholesky factor `U` with `M = U* U` for a positive
/// semidefinite Hermitian `M`.
///
/// Pivots that fall below `tol * (1 + max diagonal)` are treated as zero
/// (the matrix is singular PSD there); a pivot below `-tol * (1 + max
/// diagonal)` means the input was not PSD and is a decomposition error.
pub fn cholesky_upper(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "cholesky needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let diag_scale = (0..n).map(|i| m.get(i, i).re.abs()).fold(0.0, f64::max);
    let cutoff = tol * (1.0 + diag_scale);
    let mut u = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        // Diagonal entry: u_jj = sqrt(m_jj - sum_{k<j} |u_kj|^2).
        let mut d = m.get(j, j).re;
        for k in 0..j {
            d -= u.get(k, j).norm_sqr();
        }
        if d < -cutoff {
            return Err(Error::Decomposition(format!(
                "pivot {d:.3e} at index {j}: matrix is not positive semidefinite"
            )));
        }
        if d <= cutoff {
            // Semidefinite direction: zero pivot, zero row.
            continue;
        }
        let ujj = d.sqrt();
        u.set(j, j, C64::new(ujj, 0.0));
        for c in (j + 1)..n {
            // u_jc = (m_jc - sum_{k<j} conj(u_kj) u_kc) / u_jj.
            let mut s = m.get(j, c);
            for k in 0..j {
                s -= u.get(k, j).conj() * u.get(k, c);
            }
            u.set(j, c, s / ujj);
        }
    }
    Ok(u)
}

/// Inverse of an upper-triangular matrix by back-substitution.
pub fn inverse_upper_triangular(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !u.is_square() {
        return Err(Error::Shape("triangular inverse needs a square matrix".into()));
    }
    let n = u.rows();
    for i in 0..n {
        if u.get(i, i).norm() == 0.0 {
            return Err(Error::Decomposition(format!(
                "zero diagonal entry at index {i}: triangular matrix is singular"
            )));
        }
    }
    let mut inv = ComplexMatrix::zeros(n, n);
    // Solve U x = e_j column by column, walking rows bottom-up.
    for j in 0..n {
        for i in (0..=j).rev() {
            let mut s = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            for k in (i + 1)..=j {
                s -= u.get(i, k) * inv.get(k, j);
            }
            inv.set(i, j, s / u.get(i, i));
        }
    }
    Ok(inv)
}
