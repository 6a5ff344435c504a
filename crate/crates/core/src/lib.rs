//! Exact computation with mod-p Dieudonne modules of BT1 group schemes.
//!
//! A module is a `2g`-dimensional F_p-space carrying matrices for Frobenius
//! `F` and Verschiebung `V` (with `FV = VF = 0`) and optionally an
//! alternating form. From there the crate computes the p-rank, a-number,
//! unpolarized and polarized superspecial ranks, Ekedahl-Oort types and the
//! decomposition into cyclic words in `F` and `V`.
//!
//! Structure constants are kept in F_p with the Frobenius twist acting
//! trivially on them. All invariants computed here are dimensions, which are
//! unchanged by base change to an algebraically closed field.

pub mod bt1;
pub mod constructions;
pub mod curves;
pub mod eo;
mod error;
pub mod ffmat;
pub mod json;
pub mod kraft;

pub use bt1::{DieudonneModule, InvariantBundle, Violation};
pub use eo::{EoType, FinalType};
pub use error::{Error, Result};
pub use ffmat::{LinearSystem, Matrix, PrimeField, Subspace};
pub use kraft::{CyclicWord, Letter, WordCensus};
