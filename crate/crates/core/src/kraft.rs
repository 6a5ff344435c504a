//! Cyclic words in `F` and `V` and the modules they define.
//!
//! A word `L_1 ... L_n` defines a module on `z_1..z_n` (indices mod n): if
//! `L_i = F` then `F z_i = z_{i+1}`, and if `L_i = V` then `V z_{i+1} = -z_i`.
//! Every BT1 module in word form splits into such cycles; walking them gives
//! the word census, and the polarized superspecial rank is the multiplicity
//! of the word `FV`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bt1::{DieudonneModule, InvariantBundle};
use crate::eo;
use crate::error::{Error, Result};
use crate::ffmat::{Matrix, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    F,
    V,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::F => 'F',
            Letter::V => 'V',
        }
    }

    fn swapped(self) -> Letter {
        match self {
            Letter::F => Letter::V,
            Letter::V => Letter::F,
        }
    }
}

/// A nonempty cyclic word, stored as its lexicographically least rotation
/// (`F < V`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    (0..n)
        .map(|r| letters[r..].iter().chain(&letters[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl CyclicWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        Ok(CyclicWord {
            letters: least_rotation(&letters),
        })
    }

    /// `F^a V^b`.
    pub fn f_then_v(a: usize, b: usize) -> Result<Self> {
        let mut letters = vec![Letter::F; a];
        letters.extend(std::iter::repeat_n(Letter::V, b));
        Self::new(letters)
    }

    /// The word `FV` of the superspecial module.
    pub fn fv() -> Self {
        CyclicWord {
            letters: vec![Letter::F, Letter::V],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&x| x == l).count()
    }

    /// True when both letters occur.
    pub fn is_mixed(&self) -> bool {
        self.count(Letter::F) > 0 && self.count(Letter::V) > 0
    }

    /// Number of maximal cyclic runs of `F`; this is the a-number of the word
    /// module when the word is mixed.
    pub fn f_runs(&self) -> usize {
        let n = self.letters.len();
        (0..n)
            .filter(|&i| self.letters[i] == Letter::F && self.letters[(i + n - 1) % n] == Letter::V)
            .count()
    }

    /// Word of the Cartier dual: swap the letters.
    pub fn dual(&self) -> CyclicWord {
        CyclicWord {
            letters: least_rotation(&self.letters.iter().map(|l| l.swapped()).collect::<Vec<_>>()),
        }
    }

    /// True when the word is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.letters.len();
        (1..n)
            .filter(|d| n.is_multiple_of(*d))
            .all(|d| (0..n).any(|i| self.letters[i] != self.letters[(i + d) % n]))
    }

    /// The primitive word `u` and exponent `k` with `self = u^k`.
    pub fn root(&self) -> (CyclicWord, usize) {
        let n = self.letters.len();
        let d = (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| self.letters[i] == self.letters[(i + d) % n]))
            .expect("d = n always works");
        let root = CyclicWord {
            letters: least_rotation(&self.letters[..d]),
        };
        (root, n / d)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'F' | 'f' => Ok(Letter::F),
                'V' | 'v' => Ok(Letter::V),
                other => Err(Error::InvalidWord(format!("unexpected letter {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        CyclicWord::new(letters)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All cyclic words of length `n` (necklaces over `{F, V}`), sorted.
pub fn all_words(n: usize) -> Vec<CyclicWord> {
    assert!(n < 32);
    let mut out: Vec<CyclicWord> = (0u32..1 << n)
        .map(|mask| {
            let letters: Vec<Letter> = (0..n)
                .map(|i| if mask >> i & 1 == 0 { Letter::F } else { Letter::V })
                .collect();
            CyclicWord::new(letters).expect("nonempty")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Multiset of words, keyed in word order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordCensus {
    counts: BTreeMap<CyclicWord, usize>,
}

impl WordCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: CyclicWord, mult: usize) {
        if mult > 0 {
            *self.counts.entry(w).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, w: &CyclicWord) -> usize {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, usize)> {
        self.counts.iter().map(|(w, &m)| (w, m))
    }

    /// `sum(len * multiplicity)`.
    pub fn total_length(&self) -> usize {
        self.iter().map(|(w, m)| w.len() * m).sum()
    }

    pub fn merge(&mut self, other: &WordCensus) {
        for (w, m) in other.iter() {
            self.add(w.clone(), m);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Words joined by `;`, with `*k` marking multiplicity `k > 1`, e.g.
    /// `FFVV;FV*2`.
    pub fn to_compact_string(&self) -> String {
        self.iter()
            .map(|(w, m)| if m == 1 { w.to_string() } else { format!("{w}*{m}") })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl FromIterator<(CyclicWord, usize)> for WordCensus {
    fn from_iter<I: IntoIterator<Item = (CyclicWord, usize)>>(iter: I) -> Self {
        let mut c = WordCensus::new();
        for (w, m) in iter {
            c.add(w, m);
        }
        c
    }
}

impl Serialize for WordCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.counts.len()))?;
        for (w, m) in &self.counts {
            map.serialize_entry(&w.to_string(), m)?;
        }
        map.end()
    }
}

/// The module of a cyclic word on `z_0..z_{n-1}`: `F z_i = z_{i+1}` when the
/// i-th letter is `F`, `V z_{i+1} = z_i` when it is `V`, except that the last
/// `V` carries the sign `-1`.
///
/// A proper power `u^k` gives `k` copies of the module of `u`.
pub fn word_module(w: &CyclicWord, field: PrimeField) -> DieudonneModule {
    let (root, k) = w.root();
    if k > 1 {
        return word_module(&root, field)
            .power(k)
            .expect("copies share a field");
    }
    let n = w.len();
    let last_v = w.letters().iter().rposition(|&l| l == Letter::V);
    let mut f = Matrix::zeros(field, n, n);
    let mut v = Matrix::zeros(field, n, n);
    for (i, l) in w.letters().iter().enumerate() {
        let next = (i + 1) % n;
        match l {
            Letter::F => f.set(next, i, 1),
            Letter::V if Some(i) == last_v => v.set(i, next, field.minus_one()),
            Letter::V => v.set(i, next, 1),
        }
    }
    DieudonneModule::new(f, v, None).expect("square matrices of equal size")
}

/// `F^(g1-a1+1) (VF)^(a1-1) V^(g1-a1+1)`, a symmetric word of length `2 g1`
/// whose module has a-number `a1` and no `FV` component.
pub fn symmetric_word(g1: usize, a1: usize) -> Result<CyclicWord> {
    if a1 < 1 || a1 >= g1 {
        return Err(Error::InvalidParameter(format!(
            "symmetric word needs 1 <= a1 <= g1 - 1, got g1 = {g1}, a1 = {a1}"
        )));
    }
    let k = g1 - a1 + 1;
    let mut letters = vec![Letter::F; k];
    for _ in 0..a1 - 1 {
        letters.extend([Letter::V, Letter::F]);
    }
    letters.extend(std::iter::repeat_n(Letter::V, k));
    CyclicWord::new(letters)
}

/// Single nonzero entry of column `j`, if the column is a signed unit vector.
fn unit_column(m: &Matrix, j: usize) -> std::result::Result<Option<usize>, ()> {
    let mut hit = None;
    for i in 0..m.rows() {
        if m.get(i, j) != 0 {
            if hit.is_some() {
                return Err(());
            }
            hit = Some(i);
        }
    }
    Ok(hit)
}

/// Walks the basis graph of a module whose `F` and `V` columns are signed
/// unit vectors or zero. Returns `None` if the module is not in that form or
/// the walk does not consume every edge exactly once.
///
/// A cycle reading `u^k` is recorded as `k` copies of `u`, its class over
/// the algebraic closure.
pub fn walk_components(m: &DieudonneModule) -> Option<WordCensus> {
    let n = m.dim();
    let mut f_next = vec![None; n];
    let mut v_pre: Vec<Option<usize>> = vec![None; n];
    let mut edges = 0;
    for j in 0..n {
        if let Some(i) = unit_column(m.frobenius(), j).ok()? {
            f_next[j] = Some(i);
            edges += 1;
        }
        if let Some(i) = unit_column(m.verschiebung(), j).ok()? {
            if v_pre[i].replace(j).is_some() {
                return None;
            }
            edges += 1;
        }
    }
    if edges != n {
        return None;
    }
    let mut visited = vec![false; n];
    let mut census = WordCensus::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut letters = Vec::new();
        let mut c = start;
        loop {
            visited[c] = true;
            let (l, next) = match (f_next[c], v_pre[c]) {
                (Some(nx), _) => (Letter::F, nx),
                (None, Some(nx)) => (Letter::V, nx),
                (None, None) => return None,
            };
            letters.push(l);
            if next == start {
                break;
            }
            if visited[next] {
                return None;
            }
            c = next;
        }
        let (root, k) = CyclicWord::new(letters).ok()?.root();
        census.add(root, k);
    }
    Some(census)
}

/// Word census of a module.
///
/// Word-form inputs are walked directly; anything else is first replaced
/// by the standard module of its EO type, which is only sound for modules
/// admitting a principal quasipolarization.
pub fn decompose(m: &DieudonneModule) -> Result<WordCensus> {
    if let Some(c) = walk_components(m) {
        return Ok(c);
    }
    let t = eo::eo_type_of(m).map_err(|e| Error::NotWordForm(e.to_string()))?;
    let canon = eo::canonical_module(&t, m.field())?;
    walk_components(&canon).ok_or_else(|| Error::NotWordForm("canonical module did not walk".into()))
}

/// Polarized superspecial rank: the multiplicity of `FV` in the census.
pub fn superspecial_rank(m: &DieudonneModule) -> Result<usize> {
    Ok(decompose(m)?.multiplicity(&CyclicWord::fv()))
}

/// g, f, a and s read off a census.
pub fn census_invariants(c: &WordCensus) -> Result<InvariantBundle> {
    let f_line = CyclicWord::new(vec![Letter::F]).expect("nonempty");
    let v_line = CyclicWord::new(vec![Letter::V]).expect("nonempty");
    let f_words = c.multiplicity(&f_line);
    let v_words = c.multiplicity(&v_line);
    if f_words != v_words {
        return Err(Error::NotSelfDual { f_words, v_words });
    }
    let a = c
        .iter()
        .filter(|(w, _)| w.is_mixed())
        .map(|(w, m)| w.f_runs() * m)
        .sum();
    Ok(InvariantBundle {
        g: c.total_length() / 2,
        f: f_words,
        a,
        s: Some(c.multiplicity(&CyclicWord::fv())),
        u: None,
    })
}

/// f, a, u from the module and s from its census.
pub fn full_invariants(m: &DieudonneModule) -> Result<InvariantBundle> {
    let mut inv = m.invariants()?;
    inv.s = Some(superspecial_rank(m)?);
    Ok(inv)
}
