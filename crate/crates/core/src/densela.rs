//! Small dense real linear algebra: matrix-vector products, a cyclic Jacobi
//! symmetric eigensolver and Gaussian elimination with partial pivoting.
//!
//! Everything is row-major `f64`. Matrices in this crate are at most a few
//! hundred rows, so there is no blocking or SIMD here.

use std::fmt;

use thiserror::Error;

/// Sweep cap for the cyclic Jacobi eigensolver.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Pivots below this magnitude make `solve_linear` bail out.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Relative asymmetry accepted by `symmetric_eigen`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: |m(i,j) - m(j,i)| = {asymmetry:e} at ({row}, {col})")]
    NotSymmetric {
        row: usize,
        col: usize,
        asymmetry: f64,
    },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("matrix is singular to tolerance (pivot {pivot:e} in column {column})")]
    Singular { column: usize, pivot: f64 },
}

/// Dense row-major matrix of finite reals.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting NaN/Inf.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|x| !x.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(rows.len(), cols, data)
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
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

    /// Largest absolute entry (0 for an empty matrix).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self * v`, panicking on a dimension mismatch. Internal hot path for
    /// filter recursions where shapes are fixed at construction time.
    pub(crate) fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Standard matrix-vector product.
pub fn mat_vec(m: &Matrix, v: &[f64]) -> Result<Vec<f64>, LinalgError> {
    if m.cols != v.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.cols,
            found: v.len(),
        });
    }
    Ok(m.apply(v))
}

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Matrix,
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over every upper-triangular pair until the off-diagonal Frobenius
/// mass drops below `tol`, with at most [`MAX_JACOBI_SWEEPS`] sweeps.
/// Eigenvalues come back ascending; ties keep their original column order.
pub fn symmetric_eigen(m: &Matrix, tol: f64) -> Result<SymmetricEigen, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let scale = m.max_abs();
    let mut worst = (0, 0, 0.0_f64);
    for i in 0..n {
        for j in i + 1..n {
            let d = (m[(i, j)] - m[(j, i)]).abs();
            if d > worst.2 {
                worst = (i, j, d);
            }
        }
    }
    if worst.2 > SYMMETRY_TOLERANCE * scale {
        return Err(LinalgError::NotSymmetric {
            row: worst.0,
            col: worst.1,
            asymmetry: worst.2,
        });
    }

    let mut a = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);

    let off_norm = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) < tol;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_JACOBI_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                // signum(0.0) is 1.0 so a zero diagonal gap still rotates by pi/4
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        converged = off_norm(&a) < tol;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new_col)] = v[(i, old_col)];
        }
    }

    if !converged {
        let residual = eigen_residual(m, &eigenvalues, &eigenvectors);
        return Err(LinalgError::NoConvergence { sweeps, residual });
    }
    Ok(SymmetricEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Max over columns of `‖m·v_k − λ_k v_k‖∞`.
pub fn eigen_residual(m: &Matrix, eigenvalues: &[f64], eigenvectors: &Matrix) -> f64 {
    let mut worst = 0.0_f64;
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let col = eigenvectors.column(k);
        let mv = m.apply(&col);
        for (x, y) in mv.iter().zip(&col) {
            worst = worst.max((x - lambda * y).abs());
        }
    }
    worst
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut lu = a.clone();
    let mut x = b.to_vec();

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, lu[(r, col)]))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("non-empty pivot range");
        if pivot.abs() <= PIVOT_TOLERANCE {
            return Err(LinalgError::Singular { column: col, pivot });
        }
        if pivot_row != col {
            for j in 0..n {
                lu.data.swap(col * n + j, pivot_row * n + j);
            }
            x.swap(col, pivot_row);
        }
        for r in col + 1..n {
            let factor = lu[(r, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                lu[(r, j)] -= factor * lu[(col, j)];
            }
            x[r] -= factor * x[col];
        }
    }

    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|j| lu[(row, j)] * x[j]).sum();
        x[row] = (x[row] - tail) / lu[(row, row)];
    }
    Ok(x)
}
