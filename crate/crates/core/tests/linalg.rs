mod common;

use common::{naive_mul, naive_rank};
use dieudonne::{LinearSystem, Matrix, PrimeField, Subspace};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u32, 3, 5, 7, 97]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0..=max, 0..=max).prop_flat_map(|(k, r, c)| {
        prop::collection::vec(0..k.p() as i64, r * c).prop_map(move |data| {
            let rows: Vec<Vec<i64>> = data.chunks(c.max(1)).take(r).map(|x| x[..c].to_vec()).collect();
            if r == 0 || c == 0 {
                Matrix::zeros(k, r, c)
            } else {
                Matrix::from_rows(k, &rows).unwrap()
            }
        })
    })
}

/// A square matrix plus two subspaces of its ambient space, all over one field.
fn square_with_subspaces() -> impl Strategy<Value = (Matrix, Subspace, Subspace)> {
    (field_strategy(), 1usize..=8).prop_flat_map(|(k, n)| {
        let p = k.p();
        (
            prop::collection::vec(0..p, n * n),
            prop::collection::vec(prop::collection::vec(0..p, n), 0..=n),
            prop::collection::vec(prop::collection::vec(0..p, n), 0..=n),
        )
            .prop_map(move |(data, a, b)| {
                let mut m = Matrix::zeros(k, n, n);
                for (idx, x) in data.into_iter().enumerate() {
                    m.set(idx / n, idx % n, x);
                }
                (m, Subspace::span(k, n, a), Subspace::span(k, n, b))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_naive_elimination(m in matrix_strategy(12)) {
        prop_assert_eq!(m.rank(), naive_rank(&m));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(12)) {
        let ker = m.kernel();
        prop_assert_eq!(ker.dim() + m.rank(), m.cols());
        for v in ker.basis() {
            prop_assert!(m.apply(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn product_matches_naive((m, _, _) in square_with_subspaces()) {
        let sq = m.mul(&m).unwrap();
        prop_assert_eq!(&sq, &naive_mul(&m, &m));
        prop_assert_eq!(m.pow(2).unwrap(), sq);
    }

    #[test]
    fn grassmann_formula((_, a, b) in square_with_subspaces()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
    }

    #[test]
    fn preimage_properties((m, s, _) in square_with_subspaces()) {
        let pre = m.preimage(&s).unwrap();
        prop_assert!(pre.contains(&m.kernel()).unwrap());
        prop_assert!(s.contains(&m.map_subspace(&pre).unwrap()).unwrap());
        let reach = s.intersect(&m.image()).unwrap();
        prop_assert_eq!(pre.dim(), m.kernel().dim() + reach.dim());
    }

    #[test]
    fn inverse_when_full_rank((m, _, _) in square_with_subspaces()) {
        let n = m.rows();
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.field(), n));
            }
            Err(_) => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn linear_system_solutions((m, _, _) in square_with_subspaces()) {
        let k = m.field();
        let mut sys = LinearSystem::new(k, m.cols());
        for i in 0..m.rows() {
            sys.push(m.row(i).to_vec());
        }
        let sol = sys.solve();
        prop_assert_eq!(sol, m.kernel());
    }
}

#[test]
fn gf2_packed_path_agrees_with_naive_on_wide_rows() {
    let k = PrimeField::gf2();
    let n = 150;
    let mut m = Matrix::zeros(k, n, n);
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for i in 0..n {
        for j in 0..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state.is_multiple_of(3) {
                m.set(i, j, 1);
            }
        }
    }
    assert_eq!(m.rank(), naive_rank(&m));
    let ker = m.kernel();
    assert_eq!(ker.dim() + m.rank(), n);
}
