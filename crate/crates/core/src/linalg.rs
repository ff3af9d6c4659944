//! Dense row-major matrices and vectors over a [`Scalar`].
//!
//! Only the handful of constructions the topology identities need are here:
//! products, transpose, the all-ones matrix, diagonal extraction, block
//! splitting, Gauss-Jordan inversion and the symmetry / Laplacian predicates.
//! Zero-dimensional matrices are legal and every operation treats them as
//! vacuous.

use std::cmp::Ordering;
use std::ops::Index;

use thiserror::Error;

use crate::scalar::{Scalar, DEFAULT_EPS, PIVOT_EPS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("split point ({row}, {col}) outside a {rows}x{cols} matrix")]
    SplitOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("diagonal of a {rows}x{cols} matrix runs past its last column")]
    DiagonalOutOfRange { rows: usize, cols: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    data: Vec<S>,
}

/// The four blocks of a split matrix, named after their position.
#[derive(Debug, Clone, PartialEq)]
pub struct Blocks<S> {
    pub top_left: Matrix<S>,
    pub top_right: Matrix<S>,
    pub bottom_left: Matrix<S>,
    pub bottom_right: Matrix<S>,
}

impl<S: Scalar> Matrix<S> {
    /// Builds a `rows x cols` matrix whose `(i, j)` entry is `gen(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut gen: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(gen(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row,
                    len: entries.len(),
                    expected: ncols,
                });
            }
            data.extend(entries);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| S::from_i64(v)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// `J_m`: the `m x m` matrix of ones.
    pub fn ones(m: usize) -> Self {
        Self::from_fn(m, m, |_, _| S::one())
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn from_diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sum(&self, i: usize) -> S {
        self.row(i).iter().cloned().fold(S::zero(), |acc, x| acc + x)
    }

    pub fn col_sum(&self, j: usize) -> S {
        (0..self.rows).fold(S::zero(), |acc, i| acc + self[(i, j)].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols.max(1), k % cols.max(1), v))
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Copy with entry `(i, j)` replaced. Panics when out of range.
    pub fn with_entry(&self, i: usize, j: usize, value: S) -> Self {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        let mut out = self.clone();
        out.data[i * self.cols + j] = value;
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(self.mismatch("mat_mul", other));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                // zero rows of the left factor are common (incidence, diagonal)
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Result<Vector<S>, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::DimensionMismatch {
                op: "mat_vec_mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.dim(),
                right_cols: 1,
            });
        }
        Ok(Vector::from_fn(self.rows, |i| {
            self.row(i)
                .iter()
                .zip(v.iter())
                .fold(S::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with("add", other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with("sub", other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, op: &'static str, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self, LinalgError> {
        if self.dims() != other.dims() {
            return Err(self.mismatch(op, other));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> LinalgError {
        LinalgError::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// Square matrix of size `rows()` keeping only the diagonal of `self`.
    ///
    /// The size is taken from the row count; a matrix with fewer columns than
    /// rows has no complete diagonal and is rejected.
    pub fn diag_matrix(&self) -> Result<Self, LinalgError> {
        if self.cols < self.rows {
            return Err(LinalgError::DiagonalOutOfRange {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let m = self.rows;
        Ok(Self::from_fn(m, m, |i, j| {
            if i == j {
                self[(i, j)].clone()
            } else {
                S::zero()
            }
        }))
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, v)| i == j || v.is_zero())
    }

    /// Exact equality for rationals, `|a - b| <= eps` entrywise for floats.
    pub fn eq_within(&self, other: &Self, eps: f64) -> bool {
        self.first_difference(other, eps).is_none() && self.dims() == other.dims()
    }

    /// Backend-aware equality at the default tolerance.
    pub fn mat_eq(&self, other: &Self) -> bool {
        self.eq_within(other, DEFAULT_EPS)
    }

    /// First row-major index where the two matrices differ. Dimension
    /// mismatches report `(0, 0)`.
    pub fn first_difference(&self, other: &Self, eps: f64) -> Option<(usize, usize)> {
        if self.dims() != other.dims() {
            return Some((0, 0));
        }
        self.entries()
            .zip(other.data.iter())
            .find(|((_, _, a), b)| !a.near(b, eps))
            .map(|((i, j, _), _)| (i, j))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_within(DEFAULT_EPS)
    }

    pub fn is_symmetric_within(&self, eps: f64) -> bool {
        self.is_square() && self.eq_within(&self.transpose(), eps)
    }

    pub fn is_laplacian(&self) -> bool {
        self.laplacian_violation(DEFAULT_EPS).is_none()
    }

    pub fn is_laplacian_within(&self, eps: f64) -> bool {
        self.laplacian_violation(eps).is_none()
    }

    /// First broken condition of the Laplacian predicate: square shape,
    /// non-positive off-diagonal, non-negative diagonal, zero row sums.
    pub fn laplacian_violation(&self, eps: f64) -> Option<LaplacianViolation> {
        if !self.is_square() {
            return Some(LaplacianViolation::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for (i, j, v) in self.entries() {
            if i != j && v.sign_within(eps) == Ordering::Greater {
                return Some(LaplacianViolation::PositiveOffDiagonal { row: i, col: j });
            }
            if i == j && v.sign_within(eps) == Ordering::Less {
                return Some(LaplacianViolation::NegativeDiagonal { index: i });
            }
        }
        (0..self.rows)
            .find(|&i| self.row_sum(i).sign_within(eps) != Ordering::Equal)
            .map(|row| LaplacianViolation::NonZeroRowSum { row })
    }

    /// Splits into `M[..a, ..b]`, `M[..a, b..]`, `M[a.., ..b]`, `M[a.., b..]`.
    pub fn split_block(&self, a: usize, b: usize) -> Result<Blocks<S>, LinalgError> {
        if a > self.rows || b > self.cols {
            return Err(LinalgError::SplitOutOfRange {
                row: a,
                col: b,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (r, c) = (self.rows - a, self.cols - b);
        Ok(Blocks {
            top_left: Self::from_fn(a, b, |i, j| self[(i, j)].clone()),
            top_right: Self::from_fn(a, c, |i, j| self[(i, b + j)].clone()),
            bottom_left: Self::from_fn(r, b, |i, j| self[(a + i, j)].clone()),
            bottom_right: Self::from_fn(r, c, |i, j| self[(a + i, b + j)].clone()),
        })
    }

    /// Gauss-Jordan inverse.
    ///
    /// `Ok(None)` means the matrix is singular. Rationals pivot on the first
    /// non-zero entry of the column and are exact; floats use partial
    /// pivoting and declare singularity when the best pivot is below
    /// [`PIVOT_EPS`].
    pub fn inverse(&self) -> Result<Option<Self>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                op: "mat_inverse",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut left = self.to_rows();
        let mut right = Self::identity(n).to_rows();
        for col in 0..n {
            let Some(pivot_row) = choose_pivot(&left, col) else {
                return Ok(None);
            };
            left.swap(col, pivot_row);
            right.swap(col, pivot_row);
            let pivot = left[col][col].clone();
            for k in 0..n {
                left[col][k] = left[col][k].clone() / pivot.clone();
                right[col][k] = right[col][k].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == col || left[r][col].is_zero() {
                    continue;
                }
                let factor = left[r][col].clone();
                for k in 0..n {
                    left[r][k] = left[r][k].clone() - factor.clone() * left[col][k].clone();
                    right[r][k] = right[r][k].clone() - factor.clone() * right[col][k].clone();
                }
            }
        }
        Self::from_rows(right).map(Some)
    }

    /// Max-norm of `self - other`, in `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        let diff = self.sub(other)?;
        Ok(diff.data.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max))
    }
}

fn choose_pivot<S: Scalar>(rows: &[Vec<S>], col: usize) -> Option<usize> {
    let candidates = col..rows.len();
    if S::is_exact() {
        return candidates.into_iter().find(|&r| !rows[r][col].is_zero());
    }
    let (best, magnitude) = candidates
        .map(|r| (r, rows[r][col].to_f64().abs()))
        .fold((col, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    (magnitude >= PIVOT_EPS).then_some(best)
}

/// Reassembles `[[A, B], [C, D]]`.
pub fn four_block<S: Scalar>(blocks: &Blocks<S>) -> Result<Matrix<S>, LinalgError> {
    let Blocks {
        top_left: a,
        top_right: b,
        bottom_left: c,
        bottom_right: d,
    } = blocks;
    if a.rows != b.rows || c.rows != d.rows {
        return Err(a.mismatch("four_block rows", b));
    }
    if a.cols != c.cols || b.cols != d.cols {
        return Err(a.mismatch("four_block cols", c));
    }
    let (top, left) = (a.rows, a.cols);
    Ok(Matrix::from_fn(top + c.rows, left + b.cols, |i, j| {
        match (i < top, j < left) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - left)].clone(),
            (false, true) => c[(i - top, j)].clone(),
            (false, false) => d[(i - top, j - left)].clone(),
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianViolation {
    NotSquare { rows: usize, cols: usize },
    PositiveOffDiagonal { row: usize, col: usize },
    NegativeDiagonal { index: usize },
    NonZeroRowSum { row: usize },
}

impl LaplacianViolation {
    /// Matrix position that witnesses the violation.
    pub fn position(&self) -> (usize, usize) {
        match *self {
            LaplacianViolation::NotSquare { .. } => (0, 0),
            LaplacianViolation::PositiveOffDiagonal { row, col } => (row, col),
            LaplacianViolation::NegativeDiagonal { index } => (index, index),
            LaplacianViolation::NonZeroRowSum { row } => (row, 0),
        }
    }
}

impl std::fmt::Display for LaplacianViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaplacianViolation::NotSquare { rows, cols } => write!(f, "not square ({rows}x{cols})"),
            LaplacianViolation::PositiveOffDiagonal { row, col } => {
                write!(f, "positive off-diagonal entry at ({row}, {col})")
            }
            LaplacianViolation::NegativeDiagonal { index } => {
                write!(f, "negative diagonal entry at ({index}, {index})")
            }
            LaplacianViolation::NonZeroRowSum { row } => write!(f, "row {row} does not sum to zero"),
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range for {}x{} matrix",
            self.rows,
            self.cols
        );
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Vector<S> {
    pub fn new(data: Vec<S>) -> Self {
        Self { data }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> S) -> Self {
        Self {
            data: (0..dim).map(f).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_| S::zero())
    }

    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_| S::one())
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, i: usize) -> Option<&S> {
        self.data.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn map(&self, f: impl FnMut(&S) -> S) -> Self {
        Self::new(self.data.iter().map(f).collect())
    }

    pub fn inner_prod(&self, other: &Self) -> Result<S, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                op: "inner_prod",
                left_rows: self.dim(),
                left_cols: 1,
                right_rows: other.dim(),
                right_cols: 1,
            });
        }
        Ok(self
            .iter()
            .zip(other.iter())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn eq_within(&self, other: &Self, eps: f64) -> bool {
        self.dim() == other.dim() && self.iter().zip(other.iter()).all(|(a, b)| a.near(b, eps))
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(data: Vec<S>) -> Self {
        Self { data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    type Q = Rational;
    type M = Matrix<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn build_from_generator() {
        assert_eq!(
            M::from_fn(2, 2, |i, j| if i == j { q(1, 1) } else { q(0, 1) }),
            M::identity(2)
        );
        let empty = M::from_fn(0, 0, |_, _| unreachable!());
        assert_eq!(empty.dims(), (0, 0));
        let gen = M::from_fn(2, 3, |i, j| Q::from_i64((i + j) as i64));
        assert_eq!(gen, M::from_i64_rows(&[&[0, 1, 2], &[1, 2, 3]]));
    }

    #[test]
    fn equality() {
        assert!(M::identity(2).mat_eq(&M::identity(2)));
        assert!(!M::identity(2).mat_eq(&M::zeros(2, 2)));
        assert!(!M::zeros(2, 2).mat_eq(&M::zeros(2, 3)));
        let a = Matrix::<f64>::identity(2);
        let b = a.with_entry(0, 1, 1e-12);
        assert!(a.mat_eq(&b));
        assert!(!a.eq_within(&b, 0.0));
    }

    #[test]
    fn transpose_cases() {
        let a = M::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.transpose(), M::from_i64_rows(&[&[1, 3], &[2, 4]]));
        assert_eq!(M::identity(2).transpose(), M::identity(2));
        assert_eq!(M::from_i64_rows(&[&[1, 2, 3]]).transpose().dims(), (3, 1));
    }

    #[test]
    fn multiplication() {
        let a = M::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&M::identity(2)).unwrap(), a);
        let swap = M::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&swap).unwrap(), M::from_i64_rows(&[&[2, 1], &[4, 3]]));
        let err = M::zeros(2, 3).mul(&M::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch { .. }));
    }

    #[test]
    fn matrix_vector_and_inner_product() {
        let v = Vector::<Q>::from_i64(&[3, 1]);
        assert_eq!(M::identity(2).mul_vec(&v).unwrap(), v);
        let l = M::from_i64_rows(&[&[2, -2], &[-2, 2]]);
        let lv = l.mul_vec(&v).unwrap();
        assert_eq!(lv, Vector::from_i64(&[4, -4]));
        assert_eq!(
            M::zeros(2, 2).mul_vec(&Vector::from_i64(&[5, 7])).unwrap(),
            Vector::zeros(2)
        );
        assert_eq!(v.inner_prod(&lv).unwrap(), q(8, 1));
        assert_eq!(v.inner_prod(&Vector::zeros(2)).unwrap(), q(0, 1));
        assert_eq!(Vector::<Q>::ones(1).inner_prod(&Vector::ones(1)).unwrap(), q(1, 1));
        assert!(M::zeros(2, 3).mul_vec(&v).is_err());
        assert!(v.inner_prod(&Vector::zeros(3)).is_err());
    }

    #[test]
    fn ones_matrix() {
        assert_eq!(M::ones(1), M::from_i64_rows(&[&[1]]));
        assert_eq!(M::ones(2), M::from_i64_rows(&[&[1, 1], &[1, 1]]));
        assert_eq!(M::ones(0).dims(), (0, 0));
    }

    #[test]
    fn diagonal_extraction() {
        let a = M::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.diag_matrix().unwrap(), M::from_i64_rows(&[&[1, 0], &[0, 4]]));
        assert_eq!(M::identity(2).diag_matrix().unwrap(), M::identity(2));
        assert_eq!(M::zeros(3, 3).diag_matrix().unwrap(), M::zeros(3, 3));
        // wide input keeps the row-count window
        let wide = M::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(wide.diag_matrix().unwrap(), M::from_i64_rows(&[&[1, 0], &[0, 5]]));
        assert!(matches!(
            M::zeros(3, 2).diag_matrix(),
            Err(LinalgError::DiagonalOutOfRange { rows: 3, cols: 2 })
        ));
    }

    #[test]
    fn symmetry_predicate() {
        assert!(M::from_i64_rows(&[&[2, -2], &[-2, 2]]).is_symmetric());
        assert!(!M::from_i64_rows(&[&[0, 2, 0], &[0, 0, 3], &[4, 0, 0]]).is_symmetric());
        assert!(!M::zeros(2, 3).is_symmetric());
    }

    #[test]
    fn laplacian_predicate() {
        assert!(M::from_i64_rows(&[&[2, -2], &[-2, 2]]).is_laplacian());
        let bad = M::from_i64_rows(&[&[1, 1], &[-1, -1]]);
        assert_eq!(
            bad.laplacian_violation(0.0),
            Some(LaplacianViolation::PositiveOffDiagonal { row: 0, col: 1 })
        );
        assert!(M::zeros(3, 3).is_laplacian());
        assert_eq!(
            M::from_i64_rows(&[&[1, 0], &[0, 0]]).laplacian_violation(0.0),
            Some(LaplacianViolation::NonZeroRowSum { row: 0 })
        );
        assert!(!M::zeros(2, 3).is_laplacian());
    }

    #[test]
    fn block_split() {
        let blocks = M::identity(4).split_block(2, 2).unwrap();
        assert_eq!(blocks.top_left, M::identity(2));
        assert_eq!(blocks.top_right, M::zeros(2, 2));
        assert_eq!(blocks.bottom_left, M::zeros(2, 2));
        assert_eq!(blocks.bottom_right, M::identity(2));

        let p3 = M::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1], &[-1, -1, 2]]);
        let b = p3.split_block(2, 2).unwrap();
        assert_eq!(b.top_left, M::from_i64_rows(&[&[1, 0], &[0, 1]]));
        assert_eq!(b.top_right, M::from_i64_rows(&[&[-1], &[-1]]));
        assert_eq!(b.bottom_left, M::from_i64_rows(&[&[-1, -1]]));
        assert_eq!(b.bottom_right, M::from_i64_rows(&[&[2]]));

        let z = p3.split_block(0, 0).unwrap();
        assert_eq!(z.top_left.dims(), (0, 0));
        assert_eq!(z.top_right.dims(), (0, 3));
        assert_eq!(z.bottom_left.dims(), (3, 0));
        assert_eq!(z.bottom_right, p3);
        assert_eq!(four_block(&b).unwrap(), p3);
        assert!(matches!(p3.split_block(4, 1), Err(LinalgError::SplitOutOfRange { .. })));
    }

    #[test]
    fn inversion() {
        assert_eq!(M::identity(3).inverse().unwrap().unwrap(), M::identity(3));
        assert_eq!(
            M::from_i64_rows(&[&[2]]).inverse().unwrap().unwrap(),
            M::from_rows(vec![vec![q(1, 2)]]).unwrap()
        );
        let a = M::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(
            inv,
            M::from_rows(vec![vec![q(-2, 1), q(1, 1)], vec![q(3, 2), q(-1, 2)]]).unwrap()
        );
        assert_eq!(a.mul(&inv).unwrap(), M::identity(2));
        assert_eq!(M::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().unwrap(), None);
        assert_eq!(M::zeros(1, 1).inverse().unwrap(), None);
        assert!(M::zeros(2, 3).inverse().is_err());
        assert_eq!(M::zeros(0, 0).inverse().unwrap(), Some(M::zeros(0, 0)));
    }

    #[test]
    fn float_inversion_pivots() {
        let a = Matrix::<f64>::from_rows(vec![vec![1e-14, 1.0], vec![1.0, 1.0]]).unwrap();
        let inv = a.inverse().unwrap().unwrap();
        let residual = a.mul(&inv).unwrap().max_abs_diff(&Matrix::identity(2)).unwrap();
        assert!(residual <= 1e-9);
        let tiny = Matrix::<f64>::from_rows(vec![vec![1e-13]]).unwrap();
        assert_eq!(tiny.inverse().unwrap(), None);
    }

    #[test]
    fn diagonal_times_ones_repeats_diagonal() {
        let d = M::from_diagonal(&[q(2, 1), q(-1, 3), q(5, 1)]);
        let prod = d.mul(&M::ones(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod[(i, j)], d[(i, i)]);
            }
        }
    }
}
