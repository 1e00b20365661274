//! Matrix permanent via Ryser's inclusion-exclusion formula.

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Permanent of a square matrix, `O(2^n * n)` by Ryser's formula with a
/// Gray-code walk over column subsets:
///
/// `per(A) = (-1)^n * sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij`.
///
/// The dimension is checked against `caps.max_permanent_dim` so callers
/// cannot trigger runaway exponential work by accident.
pub fn permanent(m: &ComplexMatrix, caps: &Caps) -> Result<C64> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "permanent needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > caps.max_permanent_dim {
        return Err(Error::Capacity(format!(
            "permanent of dimension {} exceeds cap {}",
            m.rows(),
            caps.max_permanent_dim
        )));
    }
    Ok(permanent_unchecked(m))
}

/// Ryser evaluation without the capacity gate. Used internally where the
/// work is already bounded by the caller (the dimension equals a group
/// degree that has itself been capped).
pub(crate) fn permanent_unchecked(m: &ComplexMatrix) -> C64 {
    let n = m.rows();
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    // row_sums[i] accumulates sum_{j in S} a_ij for the current subset S.
    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    let mut total = C64::new(0.0, 0.0);
    let mut prev_gray: u64 = 0;
    for k in 1u64..(1 << n) {
        let gray = k ^ (k >> 1);
        let changed = gray ^ prev_gray;
        let j = changed.trailing_zeros() as usize;
        if gray & changed != 0 {
            for i in 0..n {
                row_sums[i] += m.get(i, j);
            }
        } else {
            for i in 0..n {
                row_sums[i] -= m.get(i, j);
            }
        }
        prev_gray = gray;
        let prod: C64 = row_sums.iter().product();
        if gray.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 0 {
        total
    } else {
        -total
    }
}
