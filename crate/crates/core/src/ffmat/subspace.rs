use super::{rref, Matrix, PrimeField};
use crate::error::{Error, Result};

/// A subspace of F_p^n held as the rows of its reduced row-echelon basis.
///
/// The echelon form is canonical, so two subspaces are equal exactly when
/// their stored bases are identical; `Eq` and `Hash` rely on this.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| (i == j) as u32).collect())
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: PrimeField, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (mut red, pivots) = rref(field, vectors, ambient);
        red.truncate(pivots.len());
        Subspace {
            field,
            ambient,
            basis: red,
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: PrimeField, ambient: usize, indices: &[usize]) -> Self {
        let vs = indices
            .iter()
            .map(|&i| (0..ambient).map(|j| (i == j) as u32).collect())
            .collect();
        Self::span(field, ambient, vs)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as a `dim x ambient` matrix (one basis vector per row).
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis).transpose()
    }

    /// Rows spanning the annihilator `{c : c . s = 0 for all s}`.
    pub(crate) fn annihilator_matrix(&self) -> Matrix {
        let ann = self.basis_matrix().kernel();
        ann.basis_matrix()
    }

    /// Coordinates of `v` with respect to the echelon basis, or `None` if
    /// `v` is not in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let k = self.field;
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut rebuilt = vec![0u32; self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (r, &x) in rebuilt.iter_mut().zip(b) {
                *r = k.add(*r, k.mul(*c, x));
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|b| self.contains_vector(b)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(self.field, self.ambient, vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.annihilator_matrix().row_vecs();
        rows.extend(other.annihilator_matrix().row_vecs());
        if rows.is_empty() {
            return Ok(Subspace::full(self.field, self.ambient));
        }
        let stacked = Matrix::from_columns(self.field, self.ambient, &rows).transpose();
        Ok(stacked.kernel())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}
