//! Kronecker products and tensor powers.

use super::ComplexMatrix;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Kronecker product `a (x) b`: entry `((i1*rb + i2), (j1*cb + j2))` equals
/// `a[i1,j1] * b[i2,j2]`. The first factor is the most significant index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(ra * rb, ca * cb, |i, j| {
        a.get(i / rb, j / cb) * b.get(i % rb, j % cb)
    })
}

/// `m`-fold Kronecker power, checked against the entry budget in `caps`
/// before any allocation. Rectangular inputs are allowed: a `p x q` matrix
/// has tensor power of shape `p^m x q^m`.
pub fn kron_power(a: &ComplexMatrix, m: usize, caps: &Caps) -> Result<ComplexMatrix> {
    let dim = |side: usize| -> Result<usize> {
        side.checked_pow(m as u32)
            .ok_or_else(|| Error::Capacity(format!("tensor power dimension {side}^{m} overflows")))
    };
    let entry_count = dim(a.rows())?
        .checked_mul(dim(a.cols())?)
        .ok_or_else(|| Error::Capacity(format!("tensor power entry count overflows")))?;
    if entry_count > caps.max_matrix_entries {
        return Err(Error::Capacity(format!(
            "tensor power needs {entry_count} entries, cap is {}",
            caps.max_matrix_entries
        )));
    }
    if m == 0 {
        return Ok(ComplexMatrix::identity(1));
    }
    let mut out = a.clone();
    for _ in 1..m {
        out = kron(&out, a);
    }
    Ok(out)
}
