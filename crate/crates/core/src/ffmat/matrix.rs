use std::fmt;

use super::{rref, PrimeField, Subspace};
use crate::error::{Error, Result};

/// Dense matrix over F_p, stored row-major.
///
/// Matrices act on column vectors: column `j` is the image of the `j`-th
/// basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(field, nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: PrimeField, nrows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % field.p());
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        debug_assert!(x < self.field.p());
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let k = self.field;
        let p = k.p() as u64;
        let mut out = Self::zeros(k, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for t in 0..self.cols {
                let a = self.get(i, t) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot += a * other.get(t, j) as u64;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.set(i, j, (x % p) as u32);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        self.check_shape(other)?;
        let k = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.add(a, b))
            .collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        self.check_shape(other)?;
        let k = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.sub(a, b))
            .collect();
        Ok(self.with_data(data))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let k = self.field;
        let c = c % k.p();
        self.with_data(self.data.iter().map(|&a| k.mul(a, c)).collect())
    }

    fn with_data(&self, data: Vec<u32>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        rref(self.field, self.row_vecs(), self.cols).1.len()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (red, pivots) = rref(self.field, self.row_vecs(), self.cols);
        let k = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(red[r][free]);
            }
            basis.push(v);
        }
        Subspace::span(k, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, self.transpose().row_vecs())
    }

    /// `{v : M v in s}`.
    pub fn preimage(&self, s: &Subspace) -> Result<Subspace> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: s.field().p(),
            });
        }
        if s.ambient_dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: s.ambient_dim(),
            });
        }
        let ann = s.annihilator_matrix();
        Ok(ann.mul(self)?.kernel())
    }

    /// Image of a subspace under the matrix.
    pub fn map_subspace(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: s.ambient_dim(),
            });
        }
        let vs = s.basis().iter().map(|b| self.apply(b)).collect();
        Ok(Subspace::span(self.field, self.rows, vs))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| (i == j) as u32));
                r
            })
            .collect();
        let (red, pivots) = rref(self.field, rows, 2 * n);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for (i, r) in red.iter().take(n).enumerate() {
            for j in 0..n {
                inv.set(i, j, r[n + j]);
            }
        }
        Ok(inv)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        Ok(())
    }

    fn check_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
