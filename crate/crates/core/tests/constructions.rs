mod common;

use common::word;
use dieudonne::constructions::{
    feasible, h_rs, i11, j_rs, m11_embedding, ord1, rank_zero_block, realize, supersingular_profile,
    ProfileQuery,
};
use dieudonne::eo::{canonical_module, eo_type_of};
use dieudonne::kraft::{decompose, full_invariants, superspecial_rank};
use dieudonne::{CyclicWord, EoType, Error, PrimeField};

fn fields() -> Vec<PrimeField> {
    [2, 3, 5].into_iter().map(|p| PrimeField::new(p).unwrap()).collect()
}

#[test]
fn elementary_modules() {
    for k in fields() {
        let e = i11(k);
        assert!(e.check_polarization());
        assert_eq!(full_invariants(&e).unwrap().s, Some(1));
        let o = ord1(k);
        assert!(o.check_polarization());
        assert_eq!((o.p_rank().unwrap(), o.a_number().unwrap()), (1, 0));
        assert_eq!(o.unpolarized_ss_rank().unwrap(), 0);
    }
}

#[test]
fn j_modules() {
    for k in fields() {
        for r in 1..=5 {
            for s in 1..=5 {
                let j = j_rs(r, s, k).unwrap();
                assert!(j.is_bt1());
                assert_eq!(j.a_number().unwrap(), 1);
                let census = decompose(&j).unwrap();
                let w = CyclicWord::f_then_v(r, s).unwrap();
                assert_eq!(census.multiplicity(&w), 1);
                let dual = decompose(&j.dual().unwrap()).unwrap();
                assert_eq!(dual, decompose(&j_rs(s, r, k).unwrap()).unwrap());
            }
        }
        let j33 = j_rs(3, 3, k).unwrap();
        assert_eq!(eo_type_of(&j33).unwrap(), EoType::supergeneric(3));
        assert!(j33.polarized().is_ok());
    }
}

#[test]
fn h_modules_have_no_superspecial_factor() {
    for k in fields() {
        for r in 1..=5 {
            for s in 1..=5 {
                let h = h_rs(r, s, k).unwrap();
                assert!(h.check_polarization(), "H({r},{s}) over F_{}", k.p());
                let inv = full_invariants(&h).unwrap();
                let expect_s = usize::from(r == 1 && s == 1);
                assert_eq!(inv.s, Some(expect_s), "H({r},{s})");
                assert_eq!(inv.f, 0);
                assert_eq!(inv.a, if r == s { 1 } else { 2 });
            }
        }
    }
    let k = PrimeField::gf2();
    let h22 = h_rs(2, 2, k).unwrap();
    assert_eq!(h22.unpolarized_ss_rank().unwrap(), 1);
    assert_eq!(superspecial_rank(&h22).unwrap(), 0);
}

#[test]
fn m11_embeddings() {
    for k in fields() {
        for r in 2..=5 {
            for s in 2..=5 {
                let e = m11_embedding(r, s, k).unwrap();
                assert!(e.verify(k));
                let j = j_rs(r, s, k).unwrap();
                assert!(j.unpolarized_ss_rank().unwrap() >= 1);
            }
        }
    }
    assert!(m11_embedding(1, 3, PrimeField::gf2()).is_err());
}

#[test]
fn realize_every_feasible_profile() {
    for k in [PrimeField::gf2(), PrimeField::new(3).unwrap()] {
        for g in 1..=6 {
            for f in 0..=g {
                for a in 0..=g {
                    for s in 0..=g {
                        let q = ProfileQuery::new(g, f, a, s);
                        match realize(q, k) {
                            Ok(m) => {
                                assert!(feasible(q));
                                assert!(m.check_polarization(), "{q:?}");
                                let inv = full_invariants(&m).unwrap();
                                assert_eq!((inv.g, inv.f, inv.a, inv.s), (g, f, a, Some(s)));
                            }
                            Err(Error::Infeasible(_)) => assert!(!feasible(q), "{q:?}"),
                            Err(e) => panic!("{q:?}: {e}"),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn rank_zero_blocks() {
    let k = PrimeField::gf2();
    for g1 in 2..=10 {
        for a1 in 1..g1 {
            let t = rank_zero_block(g1, a1).unwrap();
            assert_eq!((t.g(), t.f(), t.a()), (g1, 0, a1));
            let s = superspecial_rank(&canonical_module(&t, k).unwrap()).unwrap();
            assert_eq!(s, 0, "{t}");
        }
    }
    assert!(rank_zero_block(3, 3).is_err());
}

#[test]
fn supersingular_profiles() {
    for k in [PrimeField::gf2(), PrimeField::new(3).unwrap()] {
        for g in 1..=8 {
            for s in 0..=g + 1 {
                let r = supersingular_profile(g, s, k);
                let ok = s + 2 <= g || s == g;
                match r {
                    Ok(m) => {
                        assert!(ok, "g={g} s={s}");
                        assert!(m.check_polarization());
                        let inv = full_invariants(&m).unwrap();
                        assert_eq!((inv.f, inv.s), (0, Some(s)));
                        assert_eq!(inv.a, if s == g { g } else { s + 1 });
                    }
                    Err(Error::Infeasible(_)) => assert!(!ok, "g={g} s={s}"),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    let m = supersingular_profile(3, 1, PrimeField::gf2()).unwrap();
    let c = decompose(&m).unwrap();
    assert_eq!(c.multiplicity(&word("FV")), 1);
    assert_eq!(c.multiplicity(&word("FFVV")), 1);
}
