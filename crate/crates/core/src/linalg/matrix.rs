use std::fmt;

use super::field::Field;
use super::subspace::Subspace;

/// A dense matrix stored row-major. Entries are always canonical field
/// elements, so structural equality is mathematical equality.
///
/// Linear maps use the column convention: a map `V -> W` is a
/// `dim W x dim V` matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [F::Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn nnz(&self, field: &F) -> usize {
        self.data.iter().filter(|x| !field.is_zero(x)).count()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn insert_row(&mut self, pos: usize, row: Vec<F::Elem>) {
        assert_eq!(row.len(), self.cols);
        assert!(pos <= self.rows);
        let at = pos * self.cols;
        self.data.splice(at..at, row);
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            let start = (r0 + r) * self.cols + c0;
            self.data[start..start + block.cols].clone_from_slice(block.row(r));
        }
    }

    /// Matrix product `self * other`. Zero entries of `self` are skipped, so
    /// a sparse left factor is cheap.
    pub fn mul(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(field, self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if field.is_zero(a) {
                    continue;
                }
                field.axpy(out_row, a, other.row(k));
            }
        }
        out
    }

    /// Applies the map `self` to every row of `rows` (each row a coordinate
    /// vector), returning the images as rows: `rows * self^T`.
    pub fn apply_to_rows(&self, field: &F, rows: &Self) -> Self {
        assert_eq!(self.cols, rows.cols, "apply_to_rows shape mismatch");
        if rows.rows == 0 {
            return Self::zeros(field, 0, self.rows);
        }
        self.mul(field, &rows.transpose()).transpose()
    }

    /// Applies the map to a single column vector.
    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(x) {
                        acc = field.add(&acc, &field.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, field: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.neg(a)).collect(),
        }
    }

    /// Reduced row echelon form, pivot columns, rank.
    pub fn rref(&self, field: &F) -> (Self, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(field, true);
        let rank = pivots.len();
        (m, pivots, rank)
    }

    /// Row reduces in place and returns the pivot columns. With
    /// `reduced = false` only entries below each pivot are cleared.
    pub(crate) fn rref_in_place(&mut self, field: &F, reduced: bool) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !field.is_zero(&self.data[r * cols + c])) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    self.data.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = field.inv(&self.data[rank * cols + c]);
            if !field.is_one(&inv) {
                field.scale(&mut self.data[rank * cols + c..(rank + 1) * cols], &inv);
            }
            let start = if reduced { 0 } else { rank + 1 };
            for r in start..rows {
                if r == rank {
                    continue;
                }
                let factor = self.data[r * cols + c].clone();
                if field.is_zero(&factor) {
                    continue;
                }
                let neg = field.neg(&factor);
                let (pivot_row, target) = if r < rank {
                    let (lo, hi) = self.data.split_at_mut(rank * cols);
                    (&hi[c..cols], &mut lo[r * cols + c..(r + 1) * cols])
                } else {
                    let (lo, hi) = self.data.split_at_mut(r * cols);
                    (&lo[rank * cols + c..(rank + 1) * cols], &mut hi[c..cols])
                };
                field.axpy(target, &neg, pivot_row);
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &F) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = if self.rows > self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        m.rref_in_place(field, false).len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self, field: &F) -> Subspace<F> {
        let (r, pivots, rank) = self.rref(field);
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = field.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(field, Matrix::from_rows(n, basis))
    }

    /// Canonical basis of the column space.
    pub fn image_basis(&self, field: &F) -> Subspace<F> {
        Subspace::from_rows(field, self.transpose())
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, field: &F, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].clone_from_slice(self.row(r));
            aug.row_mut(r)[self.cols] = b[r].clone();
        }
        let pivots = aug.rref_in_place(field, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn is_invertible(&self, field: &F) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}
