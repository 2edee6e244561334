//! Dense matrices over a [`Field`] with exact elimination.

use std::fmt;

use thiserror::Error;

use crate::field::{same_field, Field, FieldError, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rows have different lengths")]
    Ragged,
}

pub type Result<T> = std::result::Result<T, MatrixError>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Gf>),
    /// `particular + span(kernel)`.
    Family {
        particular: Vec<Gf>,
        kernel: Vec<Vec<Gf>>,
    },
    Inconsistent,
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, Solution::Inconsistent)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: Field::clone(field),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Gf>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(MatrixError::Ragged);
            }
            for x in r {
                if !same_field(x.field(), field) {
                    return Err(FieldError::FieldMismatch.into());
                }
                data.push(x.raw());
            }
        }
        Ok(Matrix {
            field: Field::clone(field),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// From raw element encodings, row-major.
    pub fn from_ints(field: &Field, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(MatrixError::Ragged);
            }
            for &x in r {
                field.elem(x)?;
                data.push(x);
            }
        }
        Ok(Matrix {
            field: Field::clone(field),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field: Field::clone(field),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.field.wrap(self.data[r * self.cols + c])
    }

    pub(crate) fn raw(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: &Gf) -> Result<()> {
        if !same_field(v.field(), &self.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        self.data[r * self.cols + c] = v.raw();
        Ok(())
    }

    pub(crate) fn set_raw(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Gf> {
        self.data[r * self.cols..(r + 1) * self.cols]
            .iter()
            .map(|&v| self.field.wrap(v))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Gf>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Row-major raw encodings, the JSON wire form.
    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).map(<[u64]>::to_vec).take(self.rows).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !same_field(&self.field, &other.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add_raw(out.data[idx], f.mul_raw(a, other.data[k * other.cols + j]));
                }
            }
        }
        Ok(out)
    }

    /// Submatrix of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = Field::clone(&self.field);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.data[r * self.cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv_raw(self.data[row * self.cols + col]).expect("nonzero pivot");
            for c in col..self.cols {
                let i = row * self.cols + c;
                self.data[i] = f.mul_raw(self.data[i], inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.data[r * self.cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let sub = f.mul_raw(factor, self.data[row * self.cols + c]);
                    let i = r * self.cols + c;
                    self.data[i] = f.sub_raw(self.data[i], sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Gf> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        Ok(self.field.wrap(det_raw(&self.field, self.rows, &mut self.data.clone())))
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Gf>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg_raw(r.data[i * self.cols + fc]);
                }
                v.into_iter().map(|x| f.wrap(x)).collect()
            })
            .collect()
    }

    /// The nullspace basis as the rows of a matrix (possibly with zero rows).
    pub fn nullspace_matrix(&self) -> Matrix {
        let basis = self.nullspace();
        if basis.is_empty() {
            return Self::zeros(&self.field, 0, self.cols);
        }
        Self::from_rows(&self.field, &basis).expect("uniform rows")
    }

    pub fn solve(&self, rhs: &[Gf]) -> Result<Solution> {
        if rhs.len() != self.rows {
            return Err(MatrixError::Dimension(format!(
                "right-hand side has {} entries for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let w = self.cols + 1;
        let mut aug = Self::zeros(f, self.rows, w);
        for r in 0..self.rows {
            if !same_field(rhs[r].field(), f) {
                return Err(FieldError::FieldMismatch.into());
            }
            aug.data[r * w..r * w + self.cols].copy_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            aug.data[r * w + self.cols] = rhs[r].raw();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.data[i * w + self.cols];
        }
        let particular: Vec<Gf> = x.into_iter().map(|v| f.wrap(v)).collect();
        let kernel = self.nullspace();
        if kernel.is_empty() {
            Ok(Solution::Unique(particular))
        } else {
            Ok(Solution::Family { particular, kernel })
        }
    }

    /// Whether two matrices with the same column count span the same row space.
    pub fn row_space_equals(&self, other: &Matrix) -> Result<bool> {
        if self.cols != other.cols {
            return Err(MatrixError::Dimension("column counts differ".into()));
        }
        if !same_field(&self.field, &other.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        let r = self.rank();
        if r != other.rank() {
            return Ok(false);
        }
        let mut stacked = self.data.clone();
        stacked.extend_from_slice(&other.data);
        let both = Matrix::from_raw(&self.field, self.rows + other.rows, self.cols, stacked);
        Ok(both.rank() == r)
    }
}

/// Determinant of an `n x n` raw row-major buffer, destroying it.
pub(crate) fn det_raw(f: &Field, n: usize, a: &mut [u64]) -> u64 {
    let mut det = 1u64;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pr != col {
            for c in 0..n {
                a.swap(pr * n + c, col * n + c);
            }
            det = f.neg_raw(det);
        }
        let piv = a[col * n + col];
        det = f.mul_raw(det, piv);
        let inv = f.inv_raw(piv).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = f.mul_raw(a[r * n + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = f.mul_raw(factor, a[col * n + c]);
                a[r * n + c] = f.sub_raw(a[r * n + c], sub);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn gf13() -> Field {
        FieldCtx::prime(13).unwrap()
    }

    fn m(f: &Field, rows: &[&[u64]]) -> Matrix {
        Matrix::from_ints(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let f = gf13();
        assert!(Matrix::identity(&f, 5).determinant().unwrap().is_one());
        assert_eq!(m(&f, &[&[1, 2], &[3, 4]]).determinant().unwrap(), f.int(11));
        assert!(m(&f, &[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]).determinant().unwrap().is_zero());
        assert_eq!(
            m(&f, &[&[1, 2, 3]]).determinant().unwrap_err(),
            MatrixError::NotSquare(1, 3)
        );
        // a row swap flips the sign
        assert_eq!(m(&f, &[&[0, 1], &[1, 0]]).determinant().unwrap(), f.int(-1));
    }

    #[test]
    fn rank_examples() {
        let f = gf13();
        assert_eq!(m(&f, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
        let pts = [1u64, 3, 4, 7, 9, 12];
        let vand: Vec<Vec<Gf>> = (0..4)
            .map(|i| pts.iter().map(|&a| f.int(a as i64).pow(i)).collect())
            .collect();
        assert_eq!(Matrix::from_rows(&f, &vand).unwrap().rank(), 4);
    }

    #[test]
    fn solve_examples() {
        let f = gf13();
        let rhs = vec![f.int(3), f.int(5)];
        assert_eq!(
            Matrix::identity(&f, 2).solve(&rhs).unwrap(),
            Solution::Unique(rhs.clone())
        );
        assert_eq!(
            m(&f, &[&[1], &[1]]).solve(&[f.int(1), f.int(2)]).unwrap(),
            Solution::Inconsistent
        );
        match m(&f, &[&[1, 1]]).solve(&[f.int(4)]).unwrap() {
            Solution::Family { particular, kernel } => {
                assert_eq!(&particular[0] + &particular[1], f.int(4));
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nullspace_examples() {
        let f = gf13();
        assert!(Matrix::identity(&f, 3).nullspace().is_empty());
        assert_eq!(Matrix::zeros(&f, 2, 3).nullspace().len(), 3);
        let a = m(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in &ns {
            let col = Matrix::from_rows(&f, std::slice::from_ref(v)).unwrap().transpose();
            assert!(a.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn row_space_comparison() {
        let f = gf13();
        let a = m(&f, &[&[1, 0, 2], &[0, 1, 3]]);
        let b = m(&f, &[&[1, 1, 5], &[2, 0, 4]]);
        let c = m(&f, &[&[1, 1, 6], &[2, 0, 4]]);
        assert!(a.row_space_equals(&b).unwrap());
        assert!(!a.row_space_equals(&c).unwrap());
    }

    #[test]
    fn transpose_and_select() {
        let f = gf13();
        let a = m(&f, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.transpose().to_ints(), vec![vec![1, 4], vec![2, 5], vec![3, 6]]);
        assert_eq!(a.select_columns(&[2, 0]).to_ints(), vec![vec![3, 1], vec![6, 4]]);
    }
}
