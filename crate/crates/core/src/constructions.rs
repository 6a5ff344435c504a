//! Explicit modules: `I_{1,1}`, the ordinary pair, `J_{r,s}` and `H_{r,s}`,
//! and realizations of prescribed `(g, f, a, s)` profiles.
//!
//! The realized modules are p-torsion data only. Nothing here certifies that
//! an abelian variety (let alone a supersingular one) carries them.

use serde::Serialize;

use crate::bt1::DieudonneModule;
use crate::eo::{canonical_module, EoType};
use crate::error::{Error, Result};
use crate::ffmat::{Matrix, PrimeField};
use crate::kraft::superspecial_rank;
#[cfg(doc)]
use crate::kraft::symmetric_word;

fn standard_pairing(field: PrimeField) -> Matrix {
    let mut g = Matrix::zeros(field, 2, 2);
    g.set(0, 1, 1);
    g.set(1, 0, field.minus_one());
    g
}

/// `E/E(F+V)` on the basis `(x, Fx)`, with `Vx = -Fx`.
pub fn i11(field: PrimeField) -> DieudonneModule {
    j_rs(1, 1, field)
        .and_then(|m| m.with_form(standard_pairing(field)))
        .expect("I11 is polarized by the standard pairing")
}

/// `Z/p ⊕ μ_p`: `F` fixes `e_1`, `V` fixes `e_2`.
pub fn ord1(field: PrimeField) -> DieudonneModule {
    let mut f = Matrix::zeros(field, 2, 2);
    f.set(0, 0, 1);
    let mut v = Matrix::zeros(field, 2, 2);
    v.set(1, 1, 1);
    DieudonneModule::new(f, v, Some(standard_pairing(field))).expect("2x2 matrices")
}

/// `E/E(F^r + V^s)` on the basis `x, Fx, ..., F^r x, Vx, ..., V^(s-1) x`,
/// where `V^s x = -F^r x`.
pub fn j_rs(r: usize, s: usize, field: PrimeField) -> Result<DieudonneModule> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidParameter(format!("J_{{r,s}} needs r, s >= 1, got ({r}, {s})")));
    }
    let n = r + s;
    let minus = field.minus_one();
    let mut f = Matrix::zeros(field, n, n);
    let mut v = Matrix::zeros(field, n, n);
    for i in 0..r {
        f.set(i + 1, i, 1);
    }
    // V-chain x -> Vx -> ... -> V^(s-1) x -> -F^r x
    let chain: Vec<usize> = std::iter::once(0).chain(r + 1..n).collect();
    for w in chain.windows(2) {
        v.set(w[1], w[0], 1);
    }
    v.set(r, *chain.last().expect("nonempty"), minus);
    DieudonneModule::new(f, v, None)
}

/// `H_{r,s}`: `J_{r,r}` with a found polarization when `r = s`, otherwise
/// `J_{r,s} ⊕ J_{r,s}^D` with the duality pairing between the blocks. The
/// dual block is isomorphic to `J_{s,r}`.
pub fn h_rs(r: usize, s: usize, field: PrimeField) -> Result<DieudonneModule> {
    let j = j_rs(r, s, field)?;
    if r == s {
        return j.polarized();
    }
    let n = j.dim();
    let dual = j.dual()?;
    let sum = j.direct_sum(&dual)?;
    // <(x, ξ), (y, η)> = ξ(y) - η(x)
    let mut form = Matrix::zeros(field, 2 * n, 2 * n);
    for i in 0..n {
        form.set(i, n + i, field.minus_one());
        form.set(n + i, i, 1);
    }
    sum.with_form(form)
}

/// The element `y = F^(r-1) x + V^(s-1) x` of `J_{r,s}` spanning a copy of
/// `I_{1,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M11Embedding {
    pub y: Vec<u32>,
    pub fy: Vec<u32>,
    pub vy: Vec<u32>,
}

impl M11Embedding {
    /// `Fy = -Vy ≠ 0` and `span(y, Fy)` is two-dimensional.
    pub fn verify(&self, field: PrimeField) -> bool {
        let sum_zero = self.fy.iter().zip(&self.vy).all(|(&a, &b)| field.add(a, b) == 0);
        let span = crate::ffmat::Subspace::span(field, self.y.len(), vec![self.y.clone(), self.fy.clone()]);
        sum_zero && self.fy.iter().any(|&x| x != 0) && span.dim() == 2
    }
}

pub fn m11_embedding(r: usize, s: usize, field: PrimeField) -> Result<M11Embedding> {
    if r < 2 || s < 2 {
        return Err(Error::InvalidParameter(format!("embedding needs r, s >= 2, got ({r}, {s})")));
    }
    let m = j_rs(r, s, field)?;
    let mut y = vec![0u32; r + s];
    y[r - 1] = 1;
    y[r + s - 1] = 1;
    let fy = m.frobenius().apply(&y);
    let vy = m.verschiebung().apply(&y);
    let e = M11Embedding { y, fy, vy };
    if !e.verify(field) {
        return Err(Error::InvalidParameter("embedding check failed".into()));
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProfileQuery {
    pub g: usize,
    pub f: usize,
    pub a: usize,
    pub s: usize,
}

impl ProfileQuery {
    pub fn new(g: usize, f: usize, a: usize, s: usize) -> Self {
        ProfileQuery { g, f, a, s }
    }
}

/// Whether some principally quasipolarized BT1 module has this profile.
///
/// Either `a = g - f` and `s = a` (the superspecial-plus-ordinary case), or
/// `0 <= s < a < g - f`. The excluded boundary `s = a < g - f` would leave
/// a local-local complement with a-number 0.
pub fn feasible(q: ProfileQuery) -> bool {
    let ProfileQuery { g, f, a, s } = q;
    if f > g {
        return false;
    }
    if a == g - f {
        s == a
    } else {
        s < a && a < g - f
    }
}

/// EO type of genus `g1` with p-rank 0, a-number `a1` and no `FV` word in
/// its canonical module, for `1 <= a1 < g1`.
///
/// `[0^a1, 1, 2, ..., g1 - a1]` when `2 a1 <= g1`, otherwise
/// `[0^h, 1^(a1 - h + 1), 2, ..., g1 - a1]` with `h = floor(g1 / 2)`.
pub fn rank_zero_block(g1: usize, a1: usize) -> Result<EoType> {
    if a1 < 1 || a1 >= g1 {
        return Err(Error::InvalidParameter(format!(
            "block needs 1 <= a1 <= g1 - 1, got g1 = {g1}, a1 = {a1}"
        )));
    }
    let nu = if 2 * a1 <= g1 {
        let mut nu = vec![0; a1];
        nu.extend(1..=g1 - a1);
        nu
    } else {
        let h = g1 / 2;
        let mut nu = vec![0; h];
        nu.extend(std::iter::repeat_n(1, a1 - h + 1));
        nu.extend(2..=g1 - a1);
        nu
    };
    EoType::new(nu)
}

/// `Ord1^f ⊕ I11^s ⊕ B` where `B` is the canonical module of
/// [`rank_zero_block`]`(g - f - s, a - s)`. Every summand carries its form,
/// so the result is polarized. Invariants are recomputed before returning.
///
/// The module of [`symmetric_word`] has the same `(f, a, s)` but is not
/// self-dual, so it is not used here.
pub fn realize(q: ProfileQuery, field: PrimeField) -> Result<DieudonneModule> {
    if !feasible(q) {
        return Err(Error::Infeasible(format!(
            "no module with g={}, f={}, a={}, s={}",
            q.g, q.f, q.a, q.s
        )));
    }
    let mut m = ord1(field).power(q.f)?.direct_sum(&i11(field).power(q.s)?)?;
    if q.a != q.g - q.f {
        let b = rank_zero_block(q.g - q.f - q.s, q.a - q.s)?;
        m = m.direct_sum(&canonical_module(&b, field)?)?;
    }
    check_profile(&m, q)?;
    Ok(m)
}

fn check_profile(m: &DieudonneModule, q: ProfileQuery) -> Result<()> {
    let got = ProfileQuery {
        g: m.g().ok_or(Error::OddDimension(m.dim()))?,
        f: m.p_rank()?,
        a: m.a_number()?,
        s: superspecial_rank(m)?,
    };
    if got != q {
        return Err(Error::InvalidParameter(format!(
            "realized profile {got:?} differs from request {q:?}"
        )));
    }
    Ok(())
}

/// `I11^s ⊕ M_{g-s,g-s}` for `s ∈ [0, g-2] ∪ {g}`; `s = g - 1` is rejected.
pub fn supersingular_profile(g: usize, s: usize, field: PrimeField) -> Result<DieudonneModule> {
    if s > g || (g >= 1 && s == g - 1) {
        return Err(Error::Infeasible(format!(
            "superspecial rank {s} does not occur in dimension {g}"
        )));
    }
    let rest = canonical_module(&EoType::supergeneric(g - s), field)?;
    let m = i11(field).power(s)?.direct_sum(&rest)?;
    let a = if s == g { g } else { s + 1 };
    check_profile(&m, ProfileQuery { g, f: 0, a, s })?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kraft::{decompose, CyclicWord};

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn i11_matrices() {
        let m = i11(gf(2));
        let x = Matrix::from_rows(gf(2), &[[0, 0], [1, 0]]).unwrap();
        assert_eq!(m.frobenius(), &x);
        assert_eq!(m.verschiebung(), &x);
        assert_eq!(m.form().unwrap(), &Matrix::from_rows(gf(2), &[[0, 1], [1, 0]]).unwrap());
        let m3 = i11(gf(3));
        assert_eq!(m3.verschiebung().get(1, 0), 2);
        assert!(m3.check_polarization());
    }

    #[test]
    fn ord1_matrices() {
        let m = ord1(gf(2));
        assert_eq!(m.frobenius(), &Matrix::from_rows(gf(2), &[[1, 0], [0, 0]]).unwrap());
        assert_eq!(m.verschiebung(), &Matrix::from_rows(gf(2), &[[0, 0], [0, 1]]).unwrap());
        assert!(ord1(gf(5)).check_polarization());
    }

    #[test]
    fn j_rs_fixtures() {
        assert_eq!(j_rs(1, 1, gf(3)).unwrap().frobenius(), i11(gf(3)).frobenius());
        assert_eq!(j_rs(1, 1, gf(3)).unwrap().verschiebung(), i11(gf(3)).verschiebung());
        let j33 = j_rs(3, 3, gf(2)).unwrap();
        assert_eq!(j33.a_number().unwrap(), 1);
        assert_eq!(j_rs(2, 2, gf(2)).unwrap().unpolarized_ss_rank().unwrap(), 1);
        for (r, s) in [(2, 3), (3, 2), (4, 2), (1, 3)] {
            let m = j_rs(r, s, gf(3)).unwrap();
            assert!(m.is_bt1(), "J_{r},{s}");
            let c = decompose(&m).unwrap();
            assert_eq!(c.multiplicity(&CyclicWord::f_then_v(r, s).unwrap()), 1);
        }
        assert!(j_rs(0, 1, gf(2)).is_err());
    }

    #[test]
    fn embeddings() {
        let e = m11_embedding(2, 2, gf(2)).unwrap();
        assert_eq!(e.y, vec![0, 1, 0, 1]);
        assert_eq!(e.fy, vec![0, 0, 1, 0]);
        let e = m11_embedding(3, 2, gf(2)).unwrap();
        assert_eq!(e.y, vec![0, 0, 1, 0, 1]);
        let e = m11_embedding(2, 2, gf(3)).unwrap();
        assert_eq!(e.vy, vec![0, 0, 2, 0]);
        assert!(m11_embedding(1, 2, gf(2)).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible(ProfileQuery::new(4, 1, 2, 1)));
        assert!(feasible(ProfileQuery::new(4, 1, 3, 3)));
        assert!(!feasible(ProfileQuery::new(4, 1, 3, 2)));
        assert!(feasible(ProfileQuery::new(5, 5, 0, 0)));
        assert!(!feasible(ProfileQuery::new(4, 1, 2, 2)));
        assert!(!feasible(ProfileQuery::new(4, 5, 0, 0)));
        assert!(!feasible(ProfileQuery::new(4, 1, 0, 0)));
    }

    #[test]
    fn realize_examples() {
        let k = gf(2);
        let m = realize(ProfileQuery::new(4, 1, 2, 1), k).unwrap();
        let c = decompose(&m).unwrap();
        assert_eq!(c.to_compact_string(), "F;FFVV;FV;V");
        let m = realize(ProfileQuery::new(3, 0, 3, 3), k).unwrap();
        assert_eq!(m, i11(k).power(3).unwrap());
        let m = realize(ProfileQuery::new(5, 0, 2, 0), k).unwrap();
        assert_eq!(decompose(&m).unwrap().to_compact_string(), "FFFVVV;FFVV");
        assert!(m.check_polarization());
        assert!(matches!(
            realize(ProfileQuery::new(4, 1, 3, 2), k),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn supersingular_examples() {
        let k = gf(2);
        assert_eq!(supersingular_profile(3, 3, k).unwrap(), i11(k).power(3).unwrap());
        let m = supersingular_profile(3, 1, k).unwrap();
        assert_eq!(decompose(&m).unwrap().to_compact_string(), "FFVV;FV");
        assert!(matches!(supersingular_profile(4, 3, k), Err(Error::Infeasible(_))));
        assert!(matches!(supersingular_profile(2, 5, k), Err(Error::Infeasible(_))));
    }
}
