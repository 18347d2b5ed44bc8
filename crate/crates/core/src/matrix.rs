//! Dense exact matrices with row reduction over a field scalar.

use crate::scalar::{FieldScalar, Scalar};

/// A dense `rows x cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
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

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b.clone();
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x += y.clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = -x.clone();
        }
        out
    }

    /// Block-diagonal assembly, in the given order.
    pub fn block_diag(blocks: &[Mat<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = T::one();
        }
        m
    }
}

impl<T: FieldScalar> Mat<T> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv_lead = self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() / inv_lead.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = self[(r, j)].clone() * factor.clone();
                        self[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Solves `self * x = rhs` for each column of `rhs`.  Returns `None` when
    /// the system is inconsistent; free variables are set to zero.
    pub fn solve(&self, rhs: &Mat<T>) -> Option<Mat<T>> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Self::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let pivots = aug.rref();
        // A pivot in the rhs block means inconsistency.
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(n, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = aug[(r, n + j)].clone();
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Rank of a sparse matrix given as rows of column-to-value maps.
/// Destroys its input.  Suited to wide matrices with few rows.
pub fn sparse_rank<T: FieldScalar>(
    rows: Vec<std::collections::BTreeMap<usize, T>>,
) -> usize {
    // Reduced pivot rows, keyed by leading column.
    let mut pivots: std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, T>> =
        std::collections::BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                break;
            };
            let Some(p) = pivots.get(&lead) else {
                // Normalize so the leading entry is 1 and store.
                let inv = row[&lead].clone();
                for v in row.values_mut() {
                    *v = v.clone() / inv.clone();
                }
                pivots.insert(lead, row);
                break;
            };
            let factor = row[&lead].clone();
            for (c, v) in p.iter() {
                let delta = v.clone() * factor.clone();
                match row.entry(*c) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
