//! Dense complex matrices, block matrices, and their JSON wire format.

mod eigen;
mod factor;
mod kron;
mod permanent;
mod random;

pub use eigen::{hermitian_eigenvalues, psd_check, HERMITIAN_TOL};
pub use factor::{cholesky_upper, determinant, inverse_upper_triangular};
pub use kron::{kron, kron_power};
pub use permanent::permanent;
pub(crate) use permanent::permanent_unchecked;
pub use random::{complex_gaussian, random_matrix, random_psd, random_psd_from, trial_rng, uniform_f64};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Double-precision complex scalar used throughout the crate.
pub type C64 = Complex64;

pub(crate) fn cx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix with row-major storage.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating the entry count
    /// and finiteness of every entry.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Validation(format!(
                    "non-finite entry {z} at flat index {k}"
                )));
            }
        }
        Ok(ComplexMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds an `rows x cols` matrix with entry `(i, j)` given by `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, entries }
    }

    /// Convenience constructor from nested rows of real values.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| cx(x, 0.0)))
            .collect();
        ComplexMatrix::new(r, c, entries)
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: C64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `self == self.adjoint()`.
    pub fn hermitian_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `(self + self.adjoint()) / 2`; removes rounding asymmetry before an
    /// eigensolve.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        debug_assert!(self.is_square());
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.entries[i * self.cols + k];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += aik * rhs.entries[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

/// Relative Frobenius residual between two equally shaped matrices.
pub fn rel_residual(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    (x - y).frobenius_norm() / (1.0 + y.frobenius_norm())
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        let entries = j.entries.iter().map(|&[re, im]| cx(re, im)).collect();
        ComplexMatrix::new(j.rows, j.cols, entries)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> MatrixJson {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Square grid of equally sized square complex blocks.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BlockJson", into = "BlockJson")]
pub struct BlockMatrix {
    block_count: usize,
    block_size: usize,
    blocks: Vec<ComplexMatrix>,
}

impl BlockMatrix {
    /// Builds an `m x m` grid of `n x n` blocks from nested rows.
    pub fn from_grid(grid: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let m = grid.len();
        if m == 0 {
            return Err(Error::Shape("empty block grid".into()));
        }
        let n = grid[0].first().map_or(0, |b| b.rows());
        let mut blocks = Vec::with_capacity(m * m);
        for row in &grid {
            if row.len() != m {
                return Err(Error::Shape(format!(
                    "block grid must be {m}x{m}, found a row of length {}",
                    row.len()
                )));
            }
            for b in row {
                if b.rows() != n || b.cols() != n {
                    return Err(Error::Shape(format!(
                        "every block must be {n}x{n}, found {}x{}",
                        b.rows(),
                        b.cols()
                    )));
                }
                blocks.push(b.clone());
            }
        }
        Ok(BlockMatrix { block_count: m, block_size: n, blocks })
    }

    /// Builds a grid with block `(i, j)` given by `f(i, j)`.
    pub fn from_block_fn(
        block_count: usize,
        block_size: usize,
        mut f: impl FnMut(usize, usize) -> ComplexMatrix,
    ) -> Result<Self> {
        let mut blocks = Vec::with_capacity(block_count * block_count);
        for i in 0..block_count {
            for j in 0..block_count {
                let b = f(i, j);
                if b.rows() != block_size || b.cols() != block_size {
                    return Err(Error::Shape(format!(
                        "block ({i},{j}) must be {block_size}x{block_size}, got {}x{}",
                        b.rows(),
                        b.cols()
                    )));
                }
                blocks.push(b);
            }
        }
        Ok(BlockMatrix { block_count, block_size, blocks })
    }

    /// Partitions a flat `mn x mn` matrix into an `m x m` block grid.
    pub fn from_flat(flat: &ComplexMatrix, block_count: usize) -> Result<Self> {
        if !flat.is_square() {
            return Err(Error::Shape("block partition requires a square matrix".into()));
        }
        if block_count == 0 || flat.rows() % block_count != 0 {
            return Err(Error::Shape(format!(
                "cannot split {} rows into {} block rows",
                flat.rows(),
                block_count
            )));
        }
        let n = flat.rows() / block_count;
        Self::from_block_fn(block_count, n, |i, j| {
            ComplexMatrix::from_fn(n, n, |r, c| flat.get(i * n + r, j * n + c))
        })
    }

    pub fn identity(block_count: usize, block_size: usize) -> Self {
        Self::from_flat(&ComplexMatrix::identity(block_count * block_size), block_count)
            .expect("identity partition")
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i * self.block_count + j]
    }

    /// Reassembles the flat `mn x mn` matrix.
    pub fn flatten(&self) -> ComplexMatrix {
        let (m, n) = (self.block_count, self.block_size);
        ComplexMatrix::from_fn(m * n, m * n, |r, c| {
            self.block(r / n, c / n).get(r % n, c % n)
        })
    }

    /// Keeps diagonal blocks and zeroes the rest. This is a pinching, so it
    /// preserves positive semidefiniteness.
    pub fn zero_off_diagonal(&self) -> BlockMatrix {
        Self::from_block_fn(self.block_count, self.block_size, |i, j| {
            if i == j {
                self.block(i, j).clone()
            } else {
                ComplexMatrix::zeros(self.block_size, self.block_size)
            }
        })
        .expect("same shape")
    }

    pub fn map_blocks(&self, mut f: impl FnMut(&ComplexMatrix) -> ComplexMatrix) -> Result<BlockMatrix> {
        let mapped: Vec<ComplexMatrix> = self.blocks.iter().map(&mut f).collect();
        let size = mapped.first().map_or(0, |b| b.rows());
        for b in &mapped {
            if b.rows() != size || b.cols() != size {
                return Err(Error::Shape("mapped blocks disagree in size".into()));
            }
        }
        Ok(BlockMatrix { block_count: self.block_count, block_size: size, blocks: mapped })
    }
}

impl std::ops::Add for &BlockMatrix {
    type Output = BlockMatrix;
    fn add(self, rhs: &BlockMatrix) -> BlockMatrix {
        assert_eq!(
            (self.block_count, self.block_size),
            (rhs.block_count, rhs.block_size),
            "shape mismatch in block add"
        );
        BlockMatrix {
            block_count: self.block_count,
            block_size: self.block_size,
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BlockJson {
    m: usize,
    n: usize,
    blocks: Vec<Vec<ComplexMatrix>>,
}

impl TryFrom<BlockJson> for BlockMatrix {
    type Error = Error;
    fn try_from(j: BlockJson) -> Result<Self> {
        let bm = BlockMatrix::from_grid(j.blocks)?;
        if bm.block_count != j.m || bm.block_size != j.n {
            return Err(Error::Shape(format!(
                "header says m={}, n={} but grid is {}x{} blocks of size {}",
                j.m, j.n, bm.block_count, bm.block_count, bm.block_size
            )));
        }
        Ok(bm)
    }
}

impl From<BlockMatrix> for BlockJson {
    fn from(bm: BlockMatrix) -> BlockJson {
        let m = bm.block_count;
        BlockJson {
            m,
            n: bm.block_size,
            blocks: (0..m)
                .map(|i| (0..m).map(|j| bm.block(i, j).clone()).collect())
                .collect(),
        }
    }
}
