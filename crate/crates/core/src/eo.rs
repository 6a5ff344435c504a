//! Ekedahl-Oort types.
//!
//! An EO type `[ν_1, ..., ν_g]` records `ν_i = dim V(N_i)` along a final
//! filtration. This module enumerates types, reads off the p-rank and
//! a-number, builds the standard module of a type, and recovers the type of
//! an arbitrary module from its canonical filtration.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bt1::DieudonneModule;
use crate::error::{Error, Result};
use crate::ffmat::{Matrix, PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct EoType {
    nu: Vec<usize>,
}

/// `ν_1 ∈ {0, 1}` and `ν_i <= ν_{i+1} <= ν_i + 1`.
pub fn validate(nu: &[usize]) -> bool {
    match nu.first() {
        None => true,
        Some(&first) => first <= 1 && nu.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1),
    }
}

impl EoType {
    pub fn new(nu: Vec<usize>) -> Result<Self> {
        if validate(&nu) {
            Ok(EoType { nu })
        } else {
            Err(Error::InvalidEoType(nu))
        }
    }

    pub fn g(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// `[0, 1, ..., g-1]`: p-rank 0, a-number 1.
    pub fn supergeneric(g: usize) -> Self {
        EoType { nu: (0..g).collect() }
    }

    /// `[1, 2, ..., g]`.
    pub fn ordinary(g: usize) -> Self {
        EoType { nu: (1..=g).collect() }
    }

    /// `[0, ..., 0]`.
    pub fn superspecial(g: usize) -> Self {
        EoType { nu: vec![0; g] }
    }

    /// p-rank: `max{i : ν_i = i}`, or 0.
    pub fn f(&self) -> usize {
        self.nu
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0)
    }

    /// a-number: `g - ν_g`.
    pub fn a(&self) -> usize {
        self.nu.last().map_or(0, |&last| self.g() - last)
    }

    pub fn extend_final(&self) -> FinalType {
        let g = self.g();
        let mut psi = vec![0usize; 2 * g + 1];
        psi[1..=g].copy_from_slice(&self.nu);
        for i in g + 1..=2 * g {
            psi[i] = psi[2 * g - i] + i - g;
        }
        FinalType { psi }
    }
}

impl TryFrom<Vec<usize>> for EoType {
    type Error = Error;
    fn try_from(nu: Vec<usize>) -> Result<Self> {
        EoType::new(nu)
    }
}

impl From<EoType> for Vec<usize> {
    fn from(t: EoType) -> Self {
        t.nu
    }
}

impl fmt::Display for EoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nu.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn f_of(t: &EoType) -> usize {
    t.f()
}

pub fn a_of(t: &EoType) -> usize {
    t.a()
}

pub fn extend_final(t: &EoType) -> FinalType {
    t.extend_final()
}

/// The final type `ψ(0..=2g)`: `ψ(i) = dim V(N_i)` on the whole flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinalType {
    psi: Vec<usize>,
}

impl FinalType {
    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    pub fn g(&self) -> usize {
        self.psi.len() / 2
    }

    pub fn is_valid(&self) -> bool {
        let n = self.psi.len();
        if n.is_multiple_of(2) {
            return false;
        }
        let g = n / 2;
        self.psi[0] == 0
            && self.psi[2 * g] == g
            && self.psi.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
            && (g + 1..=2 * g).all(|i| self.psi[i] + g == self.psi[2 * g - i] + i)
    }
}

/// Lexicographic enumeration of all `2^g` types of length `g`.
pub fn enumerate(g: usize) -> EoTypes {
    assert!(g < 64, "g too large to enumerate");
    EoTypes { g, next: 0 }
}

/// Iterator returned by [`enumerate`].
#[derive(Clone, Debug)]
pub struct EoTypes {
    g: usize,
    next: u64,
}

impl Iterator for EoTypes {
    type Item = EoType;

    fn next(&mut self) -> Option<EoType> {
        if self.next >> self.g != 0 {
            return None;
        }
        // bit g-1-i of the counter is the step ν_{i+1} - ν_i; lexicographic
        // order on steps agrees with lexicographic order on ν.
        let mask = self.next;
        self.next += 1;
        let mut acc = 0;
        let nu = (0..self.g)
            .map(|i| {
                acc += ((mask >> (self.g - 1 - i)) & 1) as usize;
                acc
            })
            .collect();
        Some(EoType { nu })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = ((1u64 << self.g) - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for EoTypes {}

/// The standard module of an EO type.
///
/// On the basis `e_1..e_2g`, with `ψ` the final type and `K` the increasing
/// list of indices where `ψ` does not step up:
///
/// * `V e_i = ±e_ψ(i)` when `ψ(i) > ψ(i-1)`, else 0 (sign `-` for `i > g`);
/// * `F e_i = 0` for `i <= g` and `F e_{g+m} = e_{K[m]}`;
/// * `<e_i, e_{2g+1-i}> = 1` for `i <= g`, `-1` for `i > g`.
///
/// The sign on `V` is invisible over F_2 and makes the form compatible in
/// odd characteristic.
pub fn canonical_module(t: &EoType, field: PrimeField) -> Result<DieudonneModule> {
    let g = t.g();
    let n = 2 * g;
    let psi = t.extend_final();
    let psi = psi.psi();
    let minus = field.minus_one();
    let mut f = Matrix::zeros(field, n, n);
    let mut v = Matrix::zeros(field, n, n);
    let mut flat = Vec::with_capacity(g);
    for i in 1..=n {
        if psi[i] > psi[i - 1] {
            v.set(psi[i] - 1, i - 1, if i <= g { 1 } else { minus });
        } else {
            flat.push(i);
        }
    }
    debug_assert_eq!(flat.len(), g);
    for (m, &target) in flat.iter().enumerate() {
        f.set(target - 1, g + m, 1);
    }
    let mut form = Matrix::zeros(field, n, n);
    for i in 1..=n {
        form.set(i - 1, n - i, if i <= g { 1 } else { minus });
    }
    let m = DieudonneModule::new(f, v, None)?;
    let bad = m.validate_bt1();
    if !bad.is_empty() {
        return Err(Error::NotBt1(bad));
    }
    match m.clone().with_form(form) {
        Ok(pol) => Ok(pol),
        Err(_) => m.polarized(),
    }
}

/// Recovers the EO type of a module from its canonical filtration.
///
/// The filtration is the closure of `{0, M}` under `N -> V(N)` and
/// `N -> F^{-1}(N)`. On each canonical step `N ⊂ N'`, `dim V` must either
/// stay constant or grow by `dim N' - dim N`; the type is interpolated
/// accordingly.
pub fn eo_type_of(m: &DieudonneModule) -> Result<EoType> {
    let g = m.g().ok_or(Error::OddDimension(m.dim()))?;
    let bad = m.validate_bt1();
    if !bad.is_empty() {
        return Err(Error::NotBt1(bad));
    }
    let pieces = canonical_filtration(m)?;
    let n = 2 * g;
    let mut psi: Vec<Option<usize>> = vec![None; n + 1];
    for (dim, vdim) in &pieces {
        psi[*dim] = Some(*vdim);
    }
    let mut out = vec![0usize; n + 1];
    for w in pieces.windows(2) {
        let ((lo, vlo), (hi, vhi)) = (w[0], w[1]);
        let step = vhi - vlo;
        if step != 0 && step != hi - lo {
            return Err(Error::Filtration(format!(
                "dim V jumps by {step} across canonical step {lo}..{hi}"
            )));
        }
        for i in lo..=hi {
            out[i] = if step == 0 { vlo } else { vlo + (i - lo) };
        }
    }
    let final_type = FinalType { psi: out };
    if !final_type.is_valid() {
        return Err(Error::Filtration(format!(
            "interpolated final type {:?} is not symmetric",
            final_type.psi
        )));
    }
    EoType::new(final_type.psi[1..=g].to_vec())
}

/// The canonical filtration as `(dim N, dim V(N))`, sorted by dimension.
pub fn canonical_filtration(m: &DieudonneModule) -> Result<Vec<(usize, usize)>> {
    let field = m.field();
    let n = m.dim();
    let f = m.frobenius();
    let v = m.verschiebung();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in [Subspace::zero(field, n), Subspace::full(field, n)] {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for next in [v.map_subspace(&s)?, f.preimage(&s)?] {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut chain: Vec<Subspace> = seen.into_iter().collect();
    chain.sort_by_key(|s| s.dim());
    for w in chain.windows(2) {
        if w[0].dim() == w[1].dim() || !w[1].contains(&w[0])? {
            return Err(Error::Filtration("canonical pieces do not form a chain".into()));
        }
    }
    chain
        .iter()
        .map(|s| Ok((s.dim(), v.map_subspace(s)?.dim())))
        .collect()
}
