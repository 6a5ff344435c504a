//! Dieudonne modules of BT1 group schemes and their basic invariants.
//!
//! A [`DieudonneModule`] is a finite-dimensional F_p-space with matrices for
//! `F` and `V` (column-action convention) and an optional Gram matrix for
//! the quasipolarization. Constructors only check shapes; the BT1 axioms are
//! reported by [`DieudonneModule::validate_bt1`] and enforced by the
//! invariant computations.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffmat::{LinearSystem, Matrix, PrimeField, Subspace};

/// A failed BT1 or polarization axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    FvNonzero,
    VfNonzero,
    KerFNotImV,
    KerVNotImF,
    FormNotAlternating,
    FormDegenerate,
    FormIncompatible,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::FvNonzero => "FV != 0",
            Violation::VfNonzero => "VF != 0",
            Violation::KerFNotImV => "ker F != im V",
            Violation::KerVNotImF => "ker V != im F",
            Violation::FormNotAlternating => "form is not alternating",
            Violation::FormDegenerate => "form is degenerate",
            Violation::FormIncompatible => "<Fx,y> != <x,Vy>",
        };
        f.write_str(s)
    }
}

/// p-rank, a-number and the two superspecial ranks of a module.
///
/// `u` comes from the module itself, `s` from its word decomposition; either
/// may be absent depending on which route produced the bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantBundle {
    pub g: usize,
    pub f: usize,
    pub a: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
}

impl InvariantBundle {
    /// `0 <= f <= g`, `f < g => a >= 1`, `a <= g - f`, and `u, s <= a`.
    pub fn satisfies_bounds(&self) -> bool {
        self.f <= self.g
            && (self.f == self.g || self.a >= 1)
            && self.a <= self.g - self.f.min(self.g)
            && self.u.is_none_or(|u| u <= self.a)
            && self.s.is_none_or(|s| s <= self.a)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DieudonneModule {
    field: PrimeField,
    dim: usize,
    frob: Matrix,
    ver: Matrix,
    form: Option<Matrix>,
}

impl fmt::Debug for DieudonneModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DieudonneModule")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("F", &self.frob)
            .field("V", &self.ver)
            .field("form", &self.form)
            .finish()
    }
}

impl DieudonneModule {
    pub fn new(frob: Matrix, ver: Matrix, form: Option<Matrix>) -> Result<Self> {
        let field = frob.field();
        let dim = frob.rows();
        for m in [Some(&frob), Some(&ver), form.as_ref()].into_iter().flatten() {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: m.field().p(),
                });
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(DieudonneModule {
            field,
            dim,
            frob,
            ver,
            form,
        })
    }

    /// The zero module, identity for [`direct_sum`](Self::direct_sum).
    pub fn zero(field: PrimeField) -> Self {
        let z = Matrix::zeros(field, 0, 0);
        DieudonneModule {
            field,
            dim: 0,
            frob: z.clone(),
            ver: z.clone(),
            form: Some(z),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension; `None` for odd-dimensional modules.
    pub fn g(&self) -> Option<usize> {
        self.dim.is_multiple_of(2).then_some(self.dim / 2)
    }

    pub fn frobenius(&self) -> &Matrix {
        &self.frob
    }

    pub fn verschiebung(&self) -> &Matrix {
        &self.ver
    }

    pub fn form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    pub fn without_form(mut self) -> Self {
        self.form = None;
        self
    }

    /// Attaches `form` after checking its shape and the polarization axioms.
    pub fn with_form(self, form: Matrix) -> Result<Self> {
        let m = DieudonneModule::new(self.frob, self.ver, Some(form))?;
        let bad = m.form_violations();
        if bad.is_empty() {
            Ok(m)
        } else {
            Err(Error::NotBt1(bad))
        }
    }

    /// Attaches a form found by [`find_polarization`](Self::find_polarization).
    pub fn polarized(self) -> Result<Self> {
        if self.check_polarization() {
            return Ok(self);
        }
        let form = self.find_polarization().ok_or(Error::NoPolarization)?;
        self.with_form(form)
    }

    pub fn validate_bt1(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (f, v) = (&self.frob, &self.ver);
        if !f.mul(v).expect("shapes checked").is_zero() {
            out.push(Violation::FvNonzero);
        }
        if !v.mul(f).expect("shapes checked").is_zero() {
            out.push(Violation::VfNonzero);
        }
        if f.kernel() != v.image() {
            out.push(Violation::KerFNotImV);
        }
        if v.kernel() != f.image() {
            out.push(Violation::KerVNotImF);
        }
        out.extend(self.form_violations());
        out
    }

    pub fn is_bt1(&self) -> bool {
        self.validate_bt1().is_empty()
    }

    fn ensure_valid(&self) -> Result<()> {
        let v = self.validate_bt1();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::NotBt1(v))
        }
    }

    /// Failures of the attached form, if any; empty when there is no form.
    pub fn form_violations(&self) -> Vec<Violation> {
        match &self.form {
            Some(g) => form_violations(&self.frob, &self.ver, g),
            None => Vec::new(),
        }
    }

    /// True when a form is attached and it is alternating, nondegenerate and
    /// satisfies `<Fx, y> = <x, Vy>`.
    pub fn check_polarization(&self) -> bool {
        self.form.is_some() && self.form_violations().is_empty()
    }

    /// Dimension of the part on which `V` is bijective.
    pub fn multiplicative_rank(&self) -> usize {
        stable_image(&self.ver).dim()
    }

    /// Dimension of the part on which `F` is bijective.
    pub fn etale_rank(&self) -> usize {
        stable_image(&self.frob).dim()
    }

    pub fn p_rank(&self) -> Result<usize> {
        self.ensure_valid()?;
        let multiplicative = self.multiplicative_rank();
        let etale = self.etale_rank();
        if multiplicative != etale {
            return Err(Error::RankMismatch {
                multiplicative,
                etale,
            });
        }
        Ok(multiplicative)
    }

    /// `dim(ker F ∩ ker V)`.
    pub fn a_number(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.socle().dim())
    }

    fn socle(&self) -> Subspace {
        self.frob
            .kernel()
            .intersect(&self.ver.kernel())
            .expect("same ambient space")
    }

    /// Largest `u` with an embedding of `I_{1,1}^u`, computed as
    /// `dim F(ker(F + V))`.
    pub fn unpolarized_ss_rank(&self) -> Result<usize> {
        self.ensure_valid()?;
        let w = self.frob.add(&self.ver)?.kernel();
        Ok(self.frob.map_subspace(&w)?.dim())
    }

    /// f, a and u. Requires an even-dimensional valid module.
    pub fn invariants(&self) -> Result<InvariantBundle> {
        let g = self.g().ok_or(Error::OddDimension(self.dim))?;
        Ok(InvariantBundle {
            g,
            f: self.p_rank()?,
            a: self.a_number()?,
            s: None,
            u: Some(self.unpolarized_ss_rank()?),
        })
    }

    /// Cartier dual on the dual basis: `F' = V^T`, `V' = F^T`.
    ///
    /// A form `G` transports to `-G^{-1}`, so `dual(dual(m)) = m`.
    pub fn dual(&self) -> Result<DieudonneModule> {
        let form = match &self.form {
            Some(g) => Some(g.inverse()?.scale(self.field.minus_one())),
            None => None,
        };
        DieudonneModule::new(self.ver.transpose(), self.frob.transpose(), form)
    }

    /// Block-diagonal sum; the form is the orthogonal sum when both summands
    /// carry one.
    pub fn direct_sum(&self, other: &DieudonneModule) -> Result<DieudonneModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        let form = match (&self.form, &other.form) {
            (Some(a), Some(b)) => Some(a.block_diag(b)?),
            _ => None,
        };
        DieudonneModule::new(
            self.frob.block_diag(&other.frob)?,
            self.ver.block_diag(&other.ver)?,
            form,
        )
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: usize) -> Result<DieudonneModule> {
        (0..n).try_fold(DieudonneModule::zero(self.field), |acc, _| acc.direct_sum(self))
    }

    /// Solution space of the compatibility system for an alternating form,
    /// as a space of Gram matrices.
    pub fn compatible_forms(&self) -> Vec<Matrix> {
        let n = self.dim;
        let k = self.field;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let index = |i: usize, j: usize| -> usize {
            // position of (i, j), i < j, in `pairs`
            i * n - i * (i + 1) / 2 + (j - i - 1)
        };
        // coefficient of unknown u_{ij} in G[r][c]
        let entry = |r: usize, c: usize| -> Option<(usize, u32)> {
            match r.cmp(&c) {
                std::cmp::Ordering::Less => Some((index(r, c), 1)),
                std::cmp::Ordering::Greater => Some((index(c, r), k.minus_one())),
                std::cmp::Ordering::Equal => None,
            }
        };
        let mut sys = LinearSystem::new(k, pairs.len());
        // (F^T G - G V)[a][b] = sum_t F[t][a] G[t][b] - sum_t G[a][t] V[t][b]
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![0u32; pairs.len()];
                for t in 0..n {
                    let fa = self.frob.get(t, a);
                    if fa != 0 {
                        if let Some((u, c)) = entry(t, b) {
                            row[u] = k.add(row[u], k.mul(fa, c));
                        }
                    }
                    let vb = self.ver.get(t, b);
                    if vb != 0 {
                        if let Some((u, c)) = entry(a, t) {
                            row[u] = k.sub(row[u], k.mul(vb, c));
                        }
                    }
                }
                sys.push(row);
            }
        }
        sys.solve()
            .basis()
            .iter()
            .map(|sol| {
                let mut g = Matrix::zeros(k, n, n);
                for (u, &(i, j)) in pairs.iter().enumerate() {
                    g.set(i, j, sol[u]);
                    g.set(j, i, k.neg(sol[u]));
                }
                g
            })
            .collect()
    }

    /// Searches the compatible alternating forms for a nondegenerate one.
    ///
    /// Small solution spaces (at most 4096 elements) are swept exhaustively
    /// in lexicographic order of coefficients. Larger ones try the sum of the
    /// basis and then a fixed-seed pseudo-random sample, so a `None` there is
    /// not a proof of nonexistence.
    pub fn find_polarization(&self) -> Option<Matrix> {
        if self.dim % 2 == 1 {
            return None;
        }
        if self.dim == 0 {
            return Some(Matrix::zeros(self.field, 0, 0));
        }
        let basis = self.compatible_forms();
        let d = basis.len();
        if d == 0 {
            return None;
        }
        let k = self.field;
        let p = k.p() as u64;
        let combine = |coeffs: &[u32]| -> Matrix {
            let mut acc = Matrix::zeros(k, self.dim, self.dim);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    acc = acc.add(&b.scale(*c)).expect("same shape");
                }
            }
            acc
        };
        let nondegenerate = |m: &Matrix| m.rank() == self.dim;

        if let Some(total) = p.checked_pow(d as u32).filter(|&t| t <= 4096) {
            let mut coeffs = vec![0u32; d];
            for _ in 1..total {
                // increment, last coordinate least significant
                for c in coeffs.iter_mut().rev() {
                    *c += 1;
                    if *c as u64 == p {
                        *c = 0;
                    } else {
                        break;
                    }
                }
                let g = combine(&coeffs);
                if nondegenerate(&g) {
                    return Some(g);
                }
            }
            return None;
        }
        let g = combine(&vec![1; d]);
        if nondegenerate(&g) {
            return Some(g);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d1e0);
        for _ in 0..4096 {
            let coeffs: Vec<u32> = (0..d).map(|_| rng.random_range(0..k.p())).collect();
            let g = combine(&coeffs);
            if nondegenerate(&g) {
                return Some(g);
            }
        }
        None
    }

    /// True when `s` is stable under both `F` and `V`.
    pub fn is_submodule(&self, s: &Subspace) -> Result<bool> {
        Ok(s.contains(&self.frob.map_subspace(s)?)? && s.contains(&self.ver.map_subspace(s)?)?)
    }

    /// Orthogonal complement of a polarized submodule.
    ///
    /// Fails with [`Error::NotStable`] if `n` is not a submodule and with
    /// [`Error::DegenerateRestriction`] if the form restricted to `n` is
    /// degenerate.
    pub fn orthogonal_complement(&self, n: &Subspace) -> Result<Subspace> {
        let g = self.form.as_ref().ok_or(Error::NoForm)?;
        if n.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n.ambient_dim(),
            });
        }
        if !self.is_submodule(n)? {
            return Err(Error::NotStable);
        }
        let b = n.basis_matrix();
        let restricted = b.mul(g)?.mul(&b.transpose())?;
        if restricted.rank() != n.dim() {
            return Err(Error::DegenerateRestriction);
        }
        let complement = b.mul(g)?.kernel();
        debug_assert!(self.is_submodule(&complement).unwrap_or(false));
        Ok(complement)
    }

    /// Restriction to an `F`,`V`-stable subspace, in the subspace's echelon
    /// basis. The form is kept only if its restriction is nondegenerate.
    pub fn restrict(&self, s: &Subspace) -> Result<DieudonneModule> {
        if !self.is_submodule(s)? {
            return Err(Error::NotStable);
        }
        let k = self.field;
        let d = s.dim();
        let coords = |m: &Matrix| -> Matrix {
            let cols: Vec<Vec<u32>> = s
                .basis()
                .iter()
                .map(|b| s.coordinates(&m.apply(b)).expect("stable subspace"))
                .collect();
            Matrix::from_columns(k, d, &cols)
        };
        let f = coords(&self.frob);
        let v = coords(&self.ver);
        let form = match &self.form {
            Some(g) => {
                let b = s.basis_matrix();
                let r = b.mul(g)?.mul(&b.transpose())?;
                (r.rank() == d).then_some(r)
            }
            None => None,
        };
        DieudonneModule::new(f, v, form)
    }

    /// Splits off the etale and multiplicative parts.
    ///
    /// Returns the p-rank and the local-local part `ker F^n ∩ ker V^n`, on
    /// which both operators are nilpotent.
    pub fn split_etale_mult(&self) -> Result<(usize, DieudonneModule)> {
        let f = self.p_rank()?;
        let n = self.dim as u32;
        let kf = self.frob.pow(n)?.kernel();
        let kv = self.ver.pow(n)?.kernel();
        let locloc = kf.intersect(&kv)?;
        if locloc.dim() + 2 * f != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim - 2 * f,
                found: locloc.dim(),
            });
        }
        Ok((f, self.restrict(&locloc)?))
    }
}

fn stable_image(m: &Matrix) -> Subspace {
    let n = m.rows();
    if n == 0 {
        return Subspace::zero(m.field(), 0);
    }
    m.pow(n as u32).expect("square").image()
}

fn form_violations(f: &Matrix, v: &Matrix, g: &Matrix) -> Vec<Violation> {
    let k = g.field();
    let n = g.rows();
    let mut out = Vec::new();
    let alternating =
        (0..n).all(|i| g.get(i, i) == 0 && (0..i).all(|j| g.get(i, j) == k.neg(g.get(j, i))));
    if !alternating {
        out.push(Violation::FormNotAlternating);
    }
    if g.rank() != n {
        out.push(Violation::FormDegenerate);
    }
    let lhs = f.transpose().mul(g).expect("shapes checked");
    let rhs = g.mul(v).expect("shapes checked");
    if lhs != rhs {
        out.push(Violation::FormIncompatible);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    fn i11() -> DieudonneModule {
        let f = Matrix::from_rows(gf2(), &[[0, 0], [1, 0]]).unwrap();
        DieudonneModule::new(f.clone(), f, None).unwrap()
    }

    fn ord1() -> DieudonneModule {
        let f = Matrix::from_rows(gf2(), &[[1, 0], [0, 0]]).unwrap();
        let v = Matrix::from_rows(gf2(), &[[0, 0], [0, 1]]).unwrap();
        DieudonneModule::new(f, v, None).unwrap()
    }

    #[test]
    fn alpha_p_squared_is_not_bt1() {
        let z = Matrix::zeros(gf2(), 2, 2);
        let m = DieudonneModule::new(z.clone(), z, None).unwrap();
        let v = m.validate_bt1();
        assert!(v.contains(&Violation::KerFNotImV));
        assert!(matches!(m.a_number(), Err(Error::NotBt1(_))));
    }

    #[test]
    fn zero_module() {
        let z = DieudonneModule::zero(gf2());
        assert!(z.is_bt1());
        let inv = z.invariants().unwrap();
        assert_eq!((inv.g, inv.f, inv.a, inv.u), (0, 0, 0, Some(0)));
        assert_eq!(z.direct_sum(&i11()).unwrap().frobenius(), i11().frobenius());
    }

    #[test]
    fn i11_polarization_is_unique_over_f2() {
        // The four alternating 2x2 Gram matrices over F_2 with zero diagonal
        // are 0 and [[0,1],[1,0]]; only the latter is compatible and
        // nondegenerate, so the solution family is one-dimensional.
        let forms = i11().compatible_forms();
        assert_eq!(forms.len(), 1);
        let g = i11().find_polarization().unwrap();
        assert_eq!(g, Matrix::from_rows(gf2(), &[[0, 1], [1, 0]]).unwrap());
    }

    #[test]
    fn degenerate_form_fails_check() {
        let zero = Matrix::zeros(gf2(), 2, 2);
        let m = DieudonneModule::new(i11().frobenius().clone(), i11().verschiebung().clone(), Some(zero))
            .unwrap();
        assert!(!m.check_polarization());
        assert!(m.validate_bt1().contains(&Violation::FormDegenerate));
    }

    #[test]
    fn ranks_of_small_fixtures() {
        assert_eq!(ord1().p_rank().unwrap(), 1);
        assert_eq!(i11().p_rank().unwrap(), 0);
        assert_eq!(i11().a_number().unwrap(), 1);
        assert_eq!(i11().unpolarized_ss_rank().unwrap(), 1);
        assert_eq!(ord1().unpolarized_ss_rank().unwrap(), 0);
        let sum = ord1().direct_sum(&i11()).unwrap();
        assert_eq!(sum.p_rank().unwrap(), 1);
        assert_eq!(sum.a_number().unwrap(), 1);
        assert_eq!(sum.g(), Some(2));
    }

    #[test]
    fn split_ordinary() {
        let (f, ll) = ord1().polarized().unwrap().split_etale_mult().unwrap();
        assert_eq!(f, 1);
        assert_eq!(ll.dim(), 0);
        let (f, ll) = i11().split_etale_mult().unwrap();
        assert_eq!(f, 0);
        assert_eq!(ll.dim(), 2);
    }

    #[test]
    fn dual_is_an_involution_with_form() {
        let m = ord1().direct_sum(&i11()).unwrap().polarized().unwrap();
        let d = m.dual().unwrap();
        assert!(d.is_bt1());
        assert!(d.check_polarization());
        assert_eq!(d.dual().unwrap(), m);
    }

    #[test]
    fn complement_of_whole_space_is_zero() {
        let m = i11().polarized().unwrap();
        let c = m.orthogonal_complement(&Subspace::full(gf2(), 2)).unwrap();
        assert!(c.is_zero());
        let not_stable = Subspace::coordinate(gf2(), 2, &[0]);
        assert_eq!(m.orthogonal_complement(&not_stable), Err(Error::NotStable));
    }

    #[test]
    fn bundle_bounds() {
        let ok = InvariantBundle { g: 3, f: 1, a: 2, s: Some(1), u: Some(2) };
        assert!(ok.satisfies_bounds());
        let bad = InvariantBundle { g: 3, f: 1, a: 0, s: None, u: None };
        assert!(!bad.satisfies_bounds());
        let ordinary = InvariantBundle { g: 2, f: 2, a: 0, s: Some(0), u: Some(0) };
        assert!(ordinary.satisfies_bounds());
    }
}
