//! Curve applications: hyperelliptic curves in characteristic 2 and the
//! Hermitian curves `y^q + y = x^(q+1)`.
//!
//! Elliptic ranks are properties of abelian varieties and cannot be read
//! off p-torsion, so reports only carry upper bounds for them (`e_bound`).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bt1::DieudonneModule;
use crate::constructions::ord1;
use crate::eo::{canonical_module, EoType};
use crate::error::{Error, Result};
use crate::ffmat::PrimeField;

/// Pole orders `d_0, ..., d_r` of `h(x)` in `y^2 + y = h(x)`; all odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PoleDivisor {
    d: Vec<u64>,
}

impl PoleDivisor {
    pub fn new(d: Vec<u64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidParameter("pole divisor needs at least one pole".into()));
        }
        if let Some(bad) = d.iter().find(|&&x| x % 2 == 0) {
            return Err(Error::InvalidParameter(format!("pole order {bad} is not odd")));
        }
        Ok(PoleDivisor { d })
    }

    /// A single pole of order `2g + 1` (2-rank 0).
    pub fn single(g: u64) -> Self {
        PoleDivisor { d: vec![2 * g + 1] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.d
    }

    /// Number of poles minus one; equals the 2-rank.
    pub fn r(&self) -> usize {
        self.d.len() - 1
    }

    /// `c_j = (d_j - 1) / 2`.
    pub fn c(&self) -> Vec<u64> {
        self.d.iter().map(|&d| (d - 1) / 2).collect()
    }

    /// `g = r + sum c_j`, equivalently `2g + 2 = sum (d_j + 1)`.
    pub fn genus(&self) -> u64 {
        self.r() as u64 + self.c().iter().sum::<u64>()
    }
}

impl FromStr for PoleDivisor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad pole order {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PoleDivisor::new(d)
    }
}

impl fmt::Display for PoleDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperellipticReport {
    pub poles: Vec<u64>,
    pub g: u64,
    pub r: usize,
    pub f: usize,
    pub c: Vec<u64>,
    pub s: usize,
    pub s_bound: usize,
    pub e_bound: usize,
    /// EO types of the 2-rank-0 factors with `c_j > 0`.
    pub summands: Vec<EoType>,
}

/// Superspecial rank and bounds of a hyperelliptic curve in characteristic 2
/// from its pole orders: `s = #{j : c_j ≡ 1 mod 3}`, `s <= 1 + r`, and the
/// elliptic rank is at most `min(1 + 2r, r + s)`.
pub fn hyp2_analyze(d: &PoleDivisor) -> Result<HyperellipticReport> {
    let c = d.c();
    let r = d.r();
    let s = c.iter().filter(|&&cj| cj % 3 == 1).count();
    let summands = c
        .iter()
        .filter(|&&cj| cj > 0)
        .map(|&cj| hyp2_rank0_type(cj as usize))
        .collect::<Result<Vec<_>>>()?;
    let report = HyperellipticReport {
        poles: d.orders().to_vec(),
        g: d.genus(),
        r,
        f: r,
        c,
        s,
        s_bound: 1 + r,
        e_bound: (1 + 2 * r).min(r + s),
        summands,
    };
    debug_assert_eq!(
        2 * report.g + 2,
        d.orders().iter().map(|x| x + 1).sum::<u64>()
    );
    Ok(report)
}

/// `[0, 1, 1, 2, 2, ..., floor(g/2)]`, i.e. `ν_i = floor(i / 2)`.
pub fn hyp2_rank0_type(g: usize) -> Result<EoType> {
    if g == 0 {
        return Err(Error::InvalidParameter("genus must be positive".into()));
    }
    let t = EoType::new((1..=g).map(|i| i / 2).collect())?;
    debug_assert_eq!(t.a(), g.div_ceil(2));
    Ok(t)
}

/// `Ord1^r ⊕ ⊕_j M(c_j)` over F_2, where `M(c)` is the standard module of
/// the 2-rank-0 type of genus `c` (omitted when `c = 0`).
pub fn hyp2_module_oracle(d: &PoleDivisor) -> Result<DieudonneModule> {
    let k = PrimeField::gf2();
    let mut m = ord1(k).power(d.r())?;
    for cj in d.c() {
        if cj > 0 {
            m = m.direct_sum(&canonical_module(&hyp2_rank0_type(cj as usize)?, k)?)?;
        }
    }
    Ok(m)
}

/// Orbits of multiplication by 2 on `Z/(2^n + 1) \ {0}`, each listed from
/// its least element, ordered by that element.
pub fn doubling_orbits(n: u32) -> Result<Vec<Vec<u64>>> {
    if n == 0 || n > 24 {
        return Err(Error::InvalidParameter(format!("orbit table needs 1 <= n <= 24, got {n}")));
    }
    let m = (1u64 << n) + 1;
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    for x in 1..m {
        if seen[x as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut y = x;
        while !seen[y as usize] {
            seen[y as usize] = true;
            orbit.push(y);
            y = 2 * y % m;
        }
        out.push(orbit);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermitianReport {
    pub p: u32,
    pub n: u32,
    pub q: u128,
    pub g: u128,
    pub a: u128,
    pub s: u128,
    pub e_bound: u128,
    pub superspecial: bool,
    pub ekedahl_bound_holds: bool,
    pub orbits: Vec<Vec<u64>>,
    pub zeta_numerator_exponent: u128,
    pub points_q2: u128,
}

/// Invariants of the Hermitian curve `X_q`, `q = p^n`: genus `q(q-1)/2`,
/// a-number `p^n (p^(n-1) + 1)(p - 1) / 4`, and superspecial rank
/// `(p(p-1)/2)^n` when `n` is odd, 0 when `n` is even.
pub fn hermitian_analyze(p: u32, n: u32) -> Result<HermitianReport> {
    PrimeField::new(p)?;
    let orbits = doubling_orbits(n)?;
    let pp = p as u128;
    let q = pp.checked_pow(n).ok_or(Error::Overflow("q"))?;
    let g = q.checked_mul(q - 1).ok_or(Error::Overflow("genus"))? / 2;
    let a_num = q
        .checked_mul(pp.pow(n - 1) + 1)
        .and_then(|x| x.checked_mul(pp - 1))
        .ok_or(Error::Overflow("a-number"))?;
    debug_assert_eq!(a_num % 4, 0);
    let a = a_num / 4;
    let has_pair = orbits.iter().any(|o| o.len() == 2);
    if has_pair != (n % 2 == 1) {
        return Err(Error::InvalidParameter(format!(
            "orbit structure for n = {n} disagrees with the parity rule"
        )));
    }
    let s = if has_pair {
        (pp * (pp - 1) / 2).checked_pow(n).ok_or(Error::Overflow("superspecial rank"))?
    } else {
        0
    };
    let points_q2 = q
        .checked_pow(3)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("point count"))?;
    Ok(HermitianReport {
        p,
        n,
        q,
        g,
        a,
        s,
        e_bound: s,
        superspecial: a == g,
        ekedahl_bound_holds: ekedahl_bound(p as u128, g),
        orbits,
        zeta_numerator_exponent: g,
        points_q2,
    })
}

/// `g <= p(p-1)/2`, the genus bound for superspecial curves.
pub fn ekedahl_bound(p: u128, g: u128) -> bool {
    g <= p * (p - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_divisors() {
        let d: PoleDivisor = "3, 9".parse().unwrap();
        assert_eq!(d.c(), vec![1, 4]);
        assert_eq!(d.genus(), 6);
        assert!("3,4".parse::<PoleDivisor>().is_err());
        assert!("".parse::<PoleDivisor>().is_err());
        assert!("x".parse::<PoleDivisor>().is_err());
    }

    #[test]
    fn hyp2_examples() {
        let rep = hyp2_analyze(&PoleDivisor::single(7)).unwrap();
        assert_eq!((rep.g, rep.f, rep.s), (7, 0, 1));
        let rep = hyp2_analyze(&PoleDivisor::single(6)).unwrap();
        assert_eq!(rep.s, 0);
        let rep = hyp2_analyze(&PoleDivisor::new(vec![3, 9]).unwrap()).unwrap();
        assert_eq!((rep.r, rep.g, rep.f, rep.s, rep.s_bound), (1, 6, 1, 2, 2));
        assert_eq!(rep.c, vec![1, 4]);
        assert!(rep.e_bound <= 3);
        let ordinary = hyp2_analyze(&PoleDivisor::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!((ordinary.g, ordinary.s, ordinary.f), (2, 0, 2));
    }

    #[test]
    fn rank0_types() {
        assert_eq!(hyp2_rank0_type(4).unwrap().nu(), &[0, 1, 1, 2]);
        assert_eq!(hyp2_rank0_type(1).unwrap().nu(), &[0]);
        let t5 = hyp2_rank0_type(5).unwrap();
        assert_eq!((t5.nu(), t5.a()), (&[0, 1, 1, 2, 2][..], 3));
        assert!(hyp2_rank0_type(0).is_err());
    }

    #[test]
    fn orbits_mod_nine() {
        let o = doubling_orbits(3).unwrap();
        assert_eq!(o, vec![vec![1, 2, 4, 8, 7, 5], vec![3, 6]]);
    }

    #[test]
    fn hermitian_examples() {
        let h = hermitian_analyze(3, 1).unwrap();
        assert_eq!((h.q, h.g, h.a, h.s), (3, 3, 3, 3));
        assert!(h.superspecial && h.ekedahl_bound_holds);
        let h = hermitian_analyze(2, 2).unwrap();
        assert_eq!((h.q, h.g, h.a, h.s, h.e_bound), (4, 6, 3, 0, 0));
        let h = hermitian_analyze(2, 3).unwrap();
        assert_eq!((h.g, h.s, h.points_q2), (28, 1, 513));
        assert!(hermitian_analyze(4, 1).is_err());
    }

    #[test]
    fn ekedahl() {
        assert!(ekedahl_bound(2, 1));
        assert!(!ekedahl_bound(2, 2));
        assert!(!ekedahl_bound(3, 4));
        for p in [2u128, 3, 5, 7, 11] {
            assert!(ekedahl_bound(p, p * (p - 1) / 2));
        }
    }
}
