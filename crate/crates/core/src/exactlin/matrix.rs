//! Dense row-major matrices over a [`Field`] and Gaussian elimination.
//!
//! Matrices act on column vectors: a linear map `V -> W` with `dim V = n` and
//! `dim W = m` is an `m x n` matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&self.field.format(self.get(r, c)))?;
            }
        }
        f.write_str("]")
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(field: F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(field: F, rows: usize, cols: usize, vals: &[i64]) -> Self {
        Self::from_vec(field, rows, cols, vals.iter().map(|v| field.from_i64(*v)).collect())
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F::Elem) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if !f.is_zero(a) {
                    f.axpy(out_row, a, rhs.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let data = self.field.vec_add(&self.data, &rhs.data);
        Matrix {
            data,
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self.field.vec_sub(&self.data, &rhs.data);
        Matrix {
            data,
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.field.vec_scale(c, &self.data);
        Matrix {
            data,
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    /// Kronecker product; the basis of the product is ordered with the index of
    /// `self` major.
    pub fn kron(&self, rhs: &Self) -> Self {
        let f = self.field;
        let (r2, c2) = rhs.shape();
        let mut out = Self::zeros(f, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = rhs.get(k, l);
                        if !f.is_zero(b) {
                            out.set(i * r2 + k, j * c2 + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].clone_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].clone_from_slice(rhs.row(r));
        }
        out
    }

    /// `[self; rhs]`
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].clone_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].clone_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form; `pivots` is strictly increasing.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            let pivot_row: Vec<F::Elem> = m.row(row)[col..].to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                let start = r * m.cols + col;
                f.axpy(&mut m.data[start..start + m.cols - col], &neg, &pivot_row);
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}` as the rows of the result.
    ///
    /// One basis vector per non-pivot column `j` of the rref: it has a one in
    /// position `j` and zeros at every other non-pivot position.
    pub fn kernel_basis(&self) -> Self {
        let Rref { reduced, pivots, .. } = self.rref();
        let f = self.field;
        let free = complement(&pivots, self.cols);
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (k, &j) in free.iter().enumerate() {
            out.set(k, j, f.one());
            for (r, &p) in pivots.iter().enumerate() {
                out.set(k, p, f.neg(reduced.get(r, j)));
            }
        }
        out
    }

    /// Rows form a basis of the row space (the nonzero rows of the rref).
    pub fn row_space_basis(&self) -> Self {
        let rr = self.rref();
        rr.reduced.block(0, 0, rr.rank, self.cols)
    }

    /// Rows form a basis of the column space.
    pub fn column_space_basis(&self) -> Self {
        self.transpose().row_space_basis()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let rhs = Self::from_cols(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// Some `X` with `self * X = rhs`, if one exists. Free variables are zero.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let f = self.field;
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots, rank } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            for c in 0..rhs.cols {
                x.set(p, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.field, self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Indices in `0..n` not in the strictly increasing list `idx`.
pub fn complement(idx: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(idx.len()));
    let mut k = 0;
    for j in 0..n {
        if k < idx.len() && idx[k] == j {
            k += 1;
        } else {
            out.push(j);
        }
    }
    out
}

/// Whether the column spaces of `a` and `b` (same row count) coincide.
pub fn same_column_space<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    let ra = a.rank();
    ra == b.rank() && a.hstack(b).rank() == ra
}

/// Whether `v` lies in the column space of `a`.
pub fn in_column_space<F: Field>(a: &Matrix<F>, v: &[F::Elem]) -> bool {
    let col = Matrix::from_cols(a.field(), a.rows(), &[v.to_vec()]);
    a.hstack(&col).rank() == a.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_zero_and_rank_one() {
        let q = Rationals;
        let id = Matrix::identity(q, 2);
        let rr = id.rref();
        assert_eq!(rr.reduced, id);
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(rr.rank, 2);

        let z = Matrix::zeros(q, 3, 3);
        let rr = z.rref();
        assert_eq!(rr.reduced, z);
        assert!(rr.pivots.is_empty());
        assert_eq!(rr.rank, 0);

        let m = Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]);
        let rr = m.rref();
        assert_eq!(rr.reduced, Matrix::from_i64(q, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(rr.pivots, vec![0]);
        assert_eq!(rr.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert_eq!(Matrix::identity(q, 3).kernel_basis().rows(), 0);
        assert_eq!(Matrix::zeros(q, 2, 3).kernel_basis().rows(), 3);

        let f5 = PrimeField::new(5).unwrap();
        let k = Matrix::from_i64(f5, 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(f5, 1, 2, &[4, 1]));
        // (4, 1) spans the same line as (1, 4)
        assert!(in_column_space(&k.transpose(), &[1, 4]));
    }

    #[test]
    fn solve_and_inverse() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_i64(f, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
        let x = a.solve(&[3, 2]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![3, 2]);

        let singular = Matrix::from_i64(f, 2, 2, &[1, 1, 1, 1]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[1, 0]).is_none());
    }

    #[test]
    fn kron_orders_left_index_major() {
        let q = Rationals;
        let a = Matrix::from_i64(q, 1, 2, &[1, 2]);
        let b = Matrix::from_i64(q, 2, 1, &[3, 4]);
        assert_eq!(a.kron(&b), Matrix::from_i64(q, 2, 2, &[3, 6, 4, 8]));
    }
}
