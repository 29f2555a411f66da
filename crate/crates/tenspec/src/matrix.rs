//! Dense complex matrices in row-major storage, with the wire format used by
//! the CLI: `{"rows": n, "cols": m, "data": [[re, im], ...]}`.
//!
//! Scalars are `num_complex::Complex64` (pairs of f64). Serialization goes
//! through serde_json, whose shortest-round-trip float rendering makes the
//! JSON form bit-exact under a parse/print cycle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from the dense linear algebra layer.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix must have positive dimensions, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("entry at ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("data length {got} does not match {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, got: usize },
    #[error("{op}: dimension mismatch {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{op}: matrix is {rows}x{cols} but must be square")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular to working tolerance")]
    SingularSystem,
    #[error("QR iteration did not converge on block {block_start}..={block_end} after {iterations} iterations")]
    NonConvergence {
        block_start: usize,
        block_end: usize,
        iterations: usize,
    },
    #[error("tolerance {which} must be strictly positive, got {value}")]
    InvalidTolerance { which: &'static str, value: f64 },
}

/// Numerical thresholds shared across the crate.
///
/// * `eig_cluster`: absolute distance below which two eigenvalues are merged
///   into one spectral point, and below which a point is snapped to zero.
/// * `rank_rel`: relative cutoff for `numerical_rank`; singular values above
///   `rank_rel * sigma_max` count toward the rank.
/// * `residual_rel`: relative residual accepted when checking the Drazin
///   axioms and other verification identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eig_cluster: f64,
    pub rank_rel: f64,
    pub residual_rel: f64,
}

impl Tolerance {
    /// Builds a tolerance set, rejecting non-positive values.
    pub fn new(eig_cluster: f64, rank_rel: f64, residual_rel: f64) -> Result<Self, LinalgError> {
        for (which, value) in [
            ("eig_cluster", eig_cluster),
            ("rank_rel", rank_rel),
            ("residual_rel", residual_rel),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(LinalgError::InvalidTolerance { which, value });
            }
        }
        Ok(Tolerance {
            eig_cluster,
            rank_rel,
            residual_rel,
        })
    }

    /// Default thresholds for a matrix of the given shape and Frobenius norm:
    /// `eig_cluster = 1e-7 * (1 + norm)`, `rank_rel = 1e-10 * max(rows, cols)`,
    /// `residual_rel = 1e-8`.
    pub fn for_shape(rows: usize, cols: usize, frobenius_norm: f64) -> Self {
        Tolerance {
            eig_cluster: 1e-7 * (1.0 + frobenius_norm),
            rank_rel: 1e-10 * rows.max(cols).max(1) as f64,
            residual_rel: 1e-8,
        }
    }

    /// Default thresholds derived from `m` itself.
    pub fn for_matrix(m: &ComplexMatrix) -> Self {
        Self::for_shape(m.rows(), m.cols(), m.frobenius_norm())
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DataLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        for (i, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFiniteEntry {
                    row: i / cols,
                    col: i % cols,
                });
            }
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of real values.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::DataLength {
                    rows: r,
                    cols: c,
                    got: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        ComplexMatrix::new(r, c, data)
    }

    /// All-zero matrix. Panics on zero dimensions.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-dimension matrix");
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Jordan block `J_k(lambda)`: `lambda` on the diagonal, ones above it.
    pub fn jordan_block(lambda: Complex64, k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = lambda;
            if i + 1 < k {
                m[(i, i + 1)] = Complex64::new(1.0, 0.0);
            }
        }
        m
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diagonal(blocks: &[ComplexMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        assert!(n > 0, "block_diagonal of no blocks");
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, b.cols, "block_diagonal needs square blocks");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(off + i, off + j)] = b[(i, j)];
                }
            }
            off += b.rows;
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self - lambda * I`; requires a square matrix.
    pub fn shift_diagonal(&self, lambda: Complex64) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "shift_diagonal",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] -= lambda;
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self[(i1, j1)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out[(i1 * other.rows + i2, j1 * other.cols + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Column-stacking `vec`: stacks columns top to bottom into a column
    /// vector of length `rows * cols`.
    pub fn vec(&self) -> Self {
        let mut out = Self::zeros(self.rows * self.cols, 1);
        let mut k = 0;
        for j in 0..self.cols {
            for i in 0..self.rows {
                out[(k, 0)] = self[(i, j)];
                k += 1;
            }
        }
        out
    }

    /// Inverse of [`ComplexMatrix::vec`] for the given target shape.
    pub fn unvec(&self, rows: usize, cols: usize) -> Result<Self, LinalgError> {
        if self.cols != 1 || self.rows != rows * cols || rows == 0 || cols == 0 {
            return Err(LinalgError::DataLength {
                rows,
                cols,
                got: self.rows * self.cols,
            });
        }
        let mut out = Self::zeros(rows, cols);
        let mut k = 0;
        for j in 0..cols {
            for i in 0..rows {
                out[(i, j)] = self[(k, 0)];
                k += 1;
            }
        }
        Ok(out)
    }

    /// Copies a contiguous sub-block.
    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        assert!(rows > 0 && cols > 0, "empty submatrix");
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(row0 + i, col0 + j)];
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hcat",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        Ok(out)
    }

    /// `self^k` with `self^0 = I`; requires a square matrix.
    pub fn pow(&self, k: usize) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(de)?;
        let data = wire
            .data
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(wire.rows, wire.cols, data).map_err(serde::de::Error::custom)
    }
}
