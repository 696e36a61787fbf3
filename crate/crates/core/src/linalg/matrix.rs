use std::fmt;

use super::field::{Field, Ring};
use super::LinalgError;

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Self { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = m.ring.one();
        }
        m
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { ring, rows, cols, data }
    }

    /// Builds a matrix from rows. All rows must have the same length.
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: ncols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            ring,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_i64_rows(ring: R, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(ring.clone(), rows.len(), cols, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn ring(&self) -> &R {
        &self.ring
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

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [R::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == self.ring.neg(&self[(j, i)])))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        Self {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let ring = &self.ring;
        let mut out = Self::zeros(ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if ring.is_zero(b) {
                        continue;
                    }
                    let t = ring.mul(a, b);
                    let cur = &mut out.data[i * other.cols + j];
                    *cur = ring.add(cur, &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.ring.zero(), |acc, (a, b)| {
                    self.ring.add(&acc, &self.ring.mul(a, b))
                })
            })
            .collect()
    }

    /// Stacks matrices vertically. All must share the column count.
    pub fn vstack(ring: R, blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Self { ring, rows, cols, data }
    }

    /// Concatenates matrices horizontally. All must share the row count.
    pub fn hstack(ring: R, blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend(b.row(i).iter().cloned());
            }
        }
        Self { ring, rows, cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Adds (or with `negate`, subtracts) `block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self, negate: bool) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block[(i, j)];
                if self.ring.is_zero(b) {
                    continue;
                }
                let cur = &self[(r0 + i, c0 + j)];
                let next = if negate {
                    self.ring.sub(cur, b)
                } else {
                    self.ring.add(cur, b)
                };
                self[(r0 + i, c0 + j)] = next;
            }
        }
    }

    /// Applies a ring homomorphism entrywise.
    pub fn map<S: Ring>(&self, ring: S, mut f: impl FnMut(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn rank(&self) -> usize {
        self.ring.rank_of(self)
    }

    pub fn determinant(&self) -> Result<F::Elem, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.ring.determinant_of(self))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<R: Ring> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &R::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R: Ring> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R::Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| self.ring.format(x)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

/// Coordinate-list matrix used while assembling block matrices.
#[derive(Clone, Debug)]
pub struct SparseMatrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: std::collections::BTreeMap<(usize, usize), R::Elem>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize) -> Self {
        Self {
            ring,
            rows,
            cols,
            entries: Default::default(),
        }
    }

    /// Adds `value` at `(i, j)`. Entries that cancel to zero are dropped, so
    /// no `(row, col)` pair is ever stored twice.
    pub fn accumulate(&mut self, i: usize, j: usize, value: R::Elem) {
        assert!(i < self.rows && j < self.cols, "triplet ({i},{j}) out of range");
        if self.ring.is_zero(&value) {
            return;
        }
        let ring = &self.ring;
        match self.entries.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = ring.add(o.get(), &value);
                if ring.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Matrix<R> {
        let mut m = Matrix::zeros(self.ring.clone(), self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m[(i, j)] = v.clone();
        }
        m
    }
}
