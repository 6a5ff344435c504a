//! Exact linear algebra over a small prime field F_p.
//!
//! Everything downstream (kernels of F and V, the canonical filtration, the
//! polarization solver) reduces to row reduction here. Subspaces are kept in
//! reduced row-echelon form so equality is structural. When `p = 2` row
//! reduction runs on bit-packed rows.

mod field;
mod gf2;
mod matrix;
mod subspace;

pub use field::{PrimeField, MAX_PRIME};
pub use matrix::Matrix;
pub use subspace::Subspace;

/// Reduced row-echelon form of `rows` (each of length `ncols`).
///
/// Returns all rows (nonzero rows first) and the pivot columns.
pub(crate) fn rref(field: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    if field.p() == 2 {
        let mut packed = gf2::PackedRows::pack(&rows, ncols);
        let pivots = packed.rref(ncols);
        return (packed.unpack(rows.len(), ncols), pivots);
    }
    let k = field;
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = k.inv(rows[r][col]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = k.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = k.sub(*x, k.mul(c, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    (rows, pivots)
}

/// A homogeneous linear system over F_p in a fixed number of unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: PrimeField,
    unknowns: usize,
    constraints: Vec<Vec<u32>>,
}

impl LinearSystem {
    pub fn new(field: PrimeField, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            constraints: Vec::new(),
        }
    }

    /// Adds the constraint `sum coeffs[i] * x_i = 0`. All-zero rows are dropped.
    pub fn push(&mut self, coeffs: Vec<u32>) {
        assert_eq!(coeffs.len(), self.unknowns);
        if coeffs.iter().any(|&c| c != 0) {
            self.constraints.push(coeffs);
        }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn solve(&self) -> Subspace {
        solve_linear_system(self)
    }
}

/// Solution space of a homogeneous system.
pub fn solve_linear_system(system: &LinearSystem) -> Subspace {
    if system.constraints.is_empty() {
        return Subspace::full(system.field, system.unknowns);
    }
    Matrix::from_columns(system.field, system.unknowns, &system.constraints)
        .transpose()
        .kernel()
}
