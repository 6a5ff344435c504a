//! Canonical JSON interchange for modules.
//!
//! ```text
//! {"p":2,"dim":2,"F":[[0,0],[1,0]],"V":[[0,0],[1,0]],"form":[[0,1],[1,0]]}
//! ```
//!
//! Matrices are row-major with the column-action convention. Output is
//! compact with keys in the order shown, so equal modules serialize to equal
//! bytes.

use serde::{Deserialize, Serialize};

use crate::bt1::DieudonneModule;
use crate::error::{Error, Result};
use crate::ffmat::{Matrix, PrimeField};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleRecord {
    p: u32,
    dim: usize,
    #[serde(rename = "F")]
    f: Vec<Vec<i64>>,
    #[serde(rename = "V")]
    v: Vec<Vec<i64>>,
    form: Option<Vec<Vec<i64>>>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| x as i64).collect())
        .collect()
}

fn matrix_of(field: PrimeField, dim: usize, rows: &[Vec<i64>]) -> Result<Matrix> {
    if rows.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    let mut m = Matrix::zeros(field, dim, dim);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        for (j, &x) in r.iter().enumerate() {
            if x < 0 || x >= field.p() as i64 {
                return Err(Error::EntryOutOfRange { value: x, p: field.p() });
            }
            m.set(i, j, x as u32);
        }
    }
    Ok(m)
}

pub fn module_to_json(m: &DieudonneModule) -> String {
    let rec = ModuleRecord {
        p: m.field().p(),
        dim: m.dim(),
        f: rows_of(m.frobenius()),
        v: rows_of(m.verschiebung()),
        form: m.form().map(rows_of),
    };
    serde_json::to_string(&rec).expect("plain data serializes")
}

/// Parses the interchange format. Shapes and entry ranges are checked; the
/// BT1 axioms are not.
pub fn module_from_json(text: &str) -> Result<DieudonneModule> {
    let rec: ModuleRecord = serde_json::from_str(text)?;
    let field = PrimeField::new(rec.p)?;
    let f = matrix_of(field, rec.dim, &rec.f)?;
    let v = matrix_of(field, rec.dim, &rec.v)?;
    let form = rec
        .form
        .as_deref()
        .map(|g| matrix_of(field, rec.dim, g))
        .transpose()?;
    DieudonneModule::new(f, v, form)
}
