//! Star bases, symmetrizers, and induced matrices.
//!
//! For a symmetry class with group `G <= S_m`, linear character `chi`, and
//! alphabet size `n`, the symmetrizer `S` acts on the `n^m`-dimensional
//! tensor power space by `S e_alpha = (1/|G|) sum_sigma chi(sigma)
//! e_{alpha.sigma}`. Its range is spanned by the orthonormal star basis
//! `Z` (one column per admissible representative), and the induced matrix
//! of `A` is the compression `K(A) = Z* (tensor^m A) Z`.
//!
//! Sign conventions for the symmetrizer and for the entrywise formula of
//! `K(A)` vary across the literature; the ones used here are mutually
//! consistent, which is checked by the cross-construction tests: the
//! compression is the defining construction, the entrywise form must
//! reproduce it on Hermitian inputs, and the `(alpha, alpha)` entry with
//! `alpha = (1, .., m)` recovers the plain generalized matrix function.

use num_complex::Complex64 as C64;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gmf::{submatrix, GmfSpec};
use crate::linalg::{kron_power, psd_check, rel_residual, BlockMatrix, ComplexMatrix};
use crate::symclass::{act, sequence_count, sequence_index, SymmetryClass};

/// Matrix of the symmetrizer on the full tensor power space, size
/// `n^m x n^m`.
pub fn symmetrizer(class: &SymmetryClass, caps: &Caps) -> Result<ComplexMatrix> {
    let (m, n) = (class.m(), class.n());
    let dim = sequence_count(m, n, caps)?;
    let entries = dim
        .checked_mul(dim)
        .filter(|&e| e <= caps.max_matrix_entries)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "symmetrizer needs {dim}x{dim} entries, cap is {}",
                caps.max_matrix_entries
            ))
        })?;
    let _ = entries;
    let group = class.group();
    let order = group.order() as f64;
    let mut s = ComplexMatrix::zeros(dim, dim);
    for beta in crate::symclass::enumerate_sequences(m, n, caps)? {
        let col = sequence_index(&beta, n);
        for (idx, sigma) in group.elements().iter().enumerate() {
            let row = sequence_index(&act(&beta, sigma), n);
            let add = class.character().value(idx) / order;
            s.set(row, col, s.get(row, col) + add);
        }
    }
    Ok(s)
}

/// Orthonormal basis of the symmetry class inside the tensor power space:
/// `Z` has shape `n^m x dim` with column `k` equal to
/// `sqrt(|G|/nu(alpha_k)) * S e_{alpha_k}` for the k-th admissible
/// representative. Orthonormality (`Z* Z = I`) is verified at
/// construction.
#[derive(Clone, Debug)]
pub struct StarBasis {
    class: SymmetryClass,
    z: ComplexMatrix,
}

impl StarBasis {
    pub fn new(class: SymmetryClass, caps: &Caps) -> Result<Self> {
        let (m, n) = (class.m(), class.n());
        let dim_full = sequence_count(m, n, caps)?;
        let cols = class.dimension();
        if dim_full.saturating_mul(cols.max(1)) > caps.max_matrix_entries {
            return Err(Error::Capacity(format!(
                "star basis needs {dim_full}x{cols} entries, cap is {}",
                caps.max_matrix_entries
            )));
        }
        if cols == 0 {
            log::debug!(
                "empty symmetry class (m={m}, n={n}, |G|={}); star basis has zero columns",
                class.group().order()
            );
        }
        let group = class.group();
        let order = group.order() as f64;
        let mut z = ComplexMatrix::zeros(dim_full, cols);
        for (k, alpha) in class.delta_bar().iter().enumerate() {
            let scale = (order / class.nu()[k] as f64).sqrt() / order;
            for (idx, sigma) in group.elements().iter().enumerate() {
                let row = sequence_index(&act(alpha, sigma), n);
                let add = class.character().value(idx) * scale;
                z.set(row, k, z.get(row, k) + add);
            }
        }
        // The columns are orthonormal by construction (distinct orbits are
        // disjoint; the diagonal normalizes via the stabilizer character
        // sum). Verify anyway: a failure means the class data is corrupt.
        let gram = &z.adjoint() * &z;
        let defect = (&gram - &ComplexMatrix::identity(cols)).max_abs();
        if defect > 1e-8 {
            return Err(Error::Internal(format!(
                "star basis failed orthonormality: defect {defect:.3e}"
            )));
        }
        Ok(StarBasis { class, z })
    }

    pub fn class(&self) -> &SymmetryClass {
        &self.class
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    /// Dimension of the symmetry class (column count of `Z`).
    pub fn dimension(&self) -> usize {
        self.class.dimension()
    }

    /// Induced matrix of a square `n x n` matrix: `K(A) = Z* (tensor^m A) Z`.
    pub fn induced(&self, a: &ComplexMatrix, caps: &Caps) -> Result<ComplexMatrix> {
        induced_between(a, self, self, caps)
    }
}

/// Induced matrix of a rectangular `p x q` input between two symmetry
/// classes that share the same group and character but have alphabet sizes
/// `p` (rows) and `q` (columns): `K(A) = Z_p* (tensor^m A) Z_q`.
pub fn induced_between(
    a: &ComplexMatrix,
    rows: &StarBasis,
    cols: &StarBasis,
    caps: &Caps,
) -> Result<ComplexMatrix> {
    if a.rows() != rows.class.n() || a.cols() != cols.class.n() {
        return Err(Error::Shape(format!(
            "matrix is {}x{} but the classes have alphabet sizes {} and {}",
            a.rows(),
            a.cols(),
            rows.class.n(),
            cols.class.n()
        )));
    }
    if rows.class.group() != cols.class.group()
        || rows.class.character() != cols.class.character()
    {
        return Err(Error::Validation(
            "row and column classes must share the same group and character".into(),
        ));
    }
    let power = kron_power(a, rows.class.m(), caps)?;
    Ok(&(&rows.z.adjoint() * &power) * &cols.z)
}

/// Entrywise construction of the induced matrix: entry `(alpha, beta)` is
/// `d(A*[alpha | beta]) / sqrt(nu(alpha) nu(beta))`, where `A*[alpha|beta]`
/// picks rows `alpha` and columns `beta` of the conjugate transpose and
/// `d` is the generalized matrix function of the class. Agrees with the
/// compression on Hermitian inputs; for non-Hermitian inputs the
/// compression is the defining construction.
pub fn induced_entrywise(
    a: &ComplexMatrix,
    class: &SymmetryClass,
    caps: &Caps,
) -> Result<ComplexMatrix> {
    if !a.is_square() || a.rows() != class.n() {
        return Err(Error::Shape(format!(
            "matrix is {}x{} but the class alphabet size is {}",
            a.rows(),
            a.cols(),
            class.n()
        )));
    }
    let _ = caps;
    let spec = GmfSpec::new(class.group().clone(), class.character().clone())?;
    let a_star = a.adjoint();
    let dim = class.dimension();
    let mut k = ComplexMatrix::zeros(dim, dim);
    for (i, alpha) in class.delta_bar().iter().enumerate() {
        for (j, beta) in class.delta_bar().iter().enumerate() {
            let sub = submatrix(&a_star, alpha, beta)?;
            let value = spec.evaluate(&sub)?;
            let scale = 1.0 / ((class.nu()[i] * class.nu()[j]) as f64).sqrt();
            k.set(i, j, value * scale);
        }
    }
    Ok(k)
}

/// Blockwise induced map: each `n x n` block maps to its induced matrix,
/// giving an `m x m` grid of `dim x dim` blocks.
///
/// When the input block matrix is positive semidefinite, the grid is also
/// the compression of the induced matrix of the flattened input by the
/// blocks of the identity embedding; this identity is verified here and a
/// violation reports an internal consistency error.
pub fn blockwise_induced(
    blocks: &BlockMatrix,
    basis: &StarBasis,
    caps: &Caps,
) -> Result<BlockMatrix> {
    if blocks.block_size() != basis.class.n() {
        return Err(Error::Shape(format!(
            "blocks are {0}x{0} but the class alphabet size is {1}",
            blocks.block_size(),
            basis.class.n()
        )));
    }
    let grid = blocks.map_blocks_result(|b| basis.induced(b, caps))?;
    if basis.dimension() == 0 {
        log::debug!("empty symmetry class; blockwise compression identity holds vacuously");
        return Ok(grid);
    }
    let flat = blocks.flatten();
    let (_, is_psd) = psd_check(&flat.hermitian_part(), 1e-9).unwrap_or((0.0, false));
    if is_psd && flat.hermitian_defect() <= 1e-9 * (1.0 + flat.max_abs()) {
        let residual = compression_residual(blocks, basis, caps)?;
        if residual > 1e-8 {
            return Err(Error::Internal(format!(
                "blockwise compression identity violated on a PSD input: residual {residual:.3e}"
            )));
        }
    }
    Ok(grid)
}

/// Relative residual of the blockwise compression identity
/// `[K(A_ij)] = Q* K(flat) Q` where `Q` horizontally concatenates the
/// induced matrices of the column blocks `E_i` of the identity. Zero (up
/// to rounding) whenever induced-matrix multiplicativity holds, in
/// particular on all inputs, but the identity is part of the verified
/// contract only for PSD inputs.
pub fn compression_residual(
    blocks: &BlockMatrix,
    basis: &StarBasis,
    caps: &Caps,
) -> Result<f64> {
    let m_blocks = blocks.block_count();
    let n = blocks.block_size();
    if n != basis.class.n() {
        return Err(Error::Shape("block size does not match the class".into()));
    }
    if basis.dimension() == 0 {
        return Ok(0.0);
    }
    let class_big = SymmetryClass::new(
        m_blocks * n,
        basis.class.group().clone(),
        basis.class.character().clone(),
        caps,
    )?;
    let basis_big = StarBasis::new(class_big, caps)?;
    let flat = blocks.flatten();
    let k_flat = basis_big.induced(&flat, caps)?;

    // E_i: the i-th block of n columns of the (mn x mn) identity.
    let identity = ComplexMatrix::identity(m_blocks * n);
    let mut k_e = Vec::with_capacity(m_blocks);
    for i in 0..m_blocks {
        let e_i = ComplexMatrix::from_fn(m_blocks * n, n, |r, c| identity.get(r, i * n + c));
        k_e.push(induced_between(&e_i, &basis_big, basis, caps)?);
    }

    let direct = blocks.map_blocks_result(|b| basis.induced(b, caps))?.flatten();
    let compressed = BlockMatrix::from_block_fn(m_blocks, basis.dimension(), |i, j| {
        &(&k_e[i].adjoint() * &k_flat) * &k_e[j]
    })?
    .flatten();
    Ok(rel_residual(&compressed, &direct))
}

impl BlockMatrix {
    /// Fallible block-by-block map; block sizes must agree across results.
    pub fn map_blocks_result(
        &self,
        mut f: impl FnMut(&ComplexMatrix) -> Result<ComplexMatrix>,
    ) -> Result<BlockMatrix> {
        let m = self.block_count();
        let mut grid = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                row.push(f(self.block(i, j))?);
            }
            grid.push(row);
        }
        BlockMatrix::from_grid(grid)
    }
}

/// Largest deviation of `P = Z Z*` from being an orthogonal projector
/// (`P* = P` and `P^2 = P`), plus the invariant-subspace residual
/// `||(I - P) (tensor^m A) Z||` for a probe matrix. Used by tests.
pub fn projector_defect(basis: &StarBasis, probe: &ComplexMatrix, caps: &Caps) -> Result<(f64, f64)> {
    let p = &basis.z * &basis.z.adjoint();
    let herm = (&p - &p.adjoint()).max_abs();
    let idem = (&(&p * &p) - &p).max_abs();
    let power = kron_power(probe, basis.class.m(), caps)?;
    let pz = &power * &basis.z;
    let residual = (&pz - &(&p * &pz)).frobenius_norm();
    Ok((herm.max(idem), residual))
}

/// Complex phase sanity helper: true when `z` is within `tol` of a
/// nonnegative real number at the scale of `|z|`.
pub fn essentially_nonnegative(z: C64, tol: f64) -> bool {
    z.im.abs() <= tol * (1.0 + z.re.abs()) && z.re >= -tol
}
