#![allow(dead_code)]

use dieudonne::kraft::word_module;
use dieudonne::{CyclicWord, DieudonneModule, Letter, Matrix, PrimeField};

/// Plain Gaussian elimination on signed integers, reduced mod p at each step.
pub fn naive_rank(m: &Matrix) -> usize {
    let p = m.field().p() as i64;
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) as i64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] % p != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| (x * a[rank][col]).rem_euclid(p) == 1).unwrap();
        for x in a[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let c = a[r][col];
                for j in 0..m.cols() {
                    a[r][j] = (a[r][j] - c * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let p = a.field().p() as u64;
    let mut out = Matrix::zeros(a.field(), a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let s: u64 = (0..a.cols()).map(|k| a.get(i, k) as u64 * b.get(k, j) as u64).sum();
            out.set(i, j, (s % p) as u32);
        }
    }
    out
}

/// Every vector of F_2^n, as 0/1 entries.
pub fn all_vectors_gf2(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0u64..1 << n).map(move |bits| (0..n).map(|i| ((bits >> i) & 1) as u32).collect())
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `log2 #(ker F ∩ ker V)` by counting vectors over F_2.
pub fn brute_a_number_gf2(m: &DieudonneModule) -> usize {
    let count = all_vectors_gf2(m.dim())
        .filter(|v| is_zero(&m.frobenius().apply(v)) && is_zero(&m.verschiebung().apply(v)))
        .count();
    count.trailing_zeros() as usize
}

/// Largest `k` with `y_1..y_k ∈ ker(F+V)` such that all `y_i, F y_i` are
/// independent, found by exhaustive search over F_2.
pub fn brute_embedding_count_gf2(m: &DieudonneModule) -> usize {
    let n = m.dim();
    let fv = m.frobenius().add(m.verschiebung()).unwrap();
    let cands: Vec<(Vec<u32>, Vec<u32>)> = all_vectors_gf2(n)
        .filter(|y| is_zero(&fv.apply(y)))
        .map(|y| {
            let fy = m.frobenius().apply(&y);
            (y, fy)
        })
        .filter(|(_, fy)| !is_zero(fy))
        .collect();
    fn rank_of(field: PrimeField, n: usize, rows: &[Vec<u32>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let m = Matrix::from_rows(
            field,
            &rows.iter().map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
        )
        .unwrap();
        debug_assert_eq!(m.cols(), n);
        naive_rank(&m)
    }
    fn search(
        field: PrimeField,
        n: usize,
        cands: &[(Vec<u32>, Vec<u32>)],
        start: usize,
        chosen: &mut Vec<Vec<u32>>,
        best: &mut usize,
    ) {
        *best = (*best).max(chosen.len() / 2);
        if *best * 2 >= n {
            return;
        }
        for i in start..cands.len() {
            chosen.push(cands[i].0.clone());
            chosen.push(cands[i].1.clone());
            if rank_of(field, n, chosen) == chosen.len() {
                search(field, n, cands, i + 1, chosen, best);
            }
            chosen.pop();
            chosen.pop();
        }
    }
    let mut best = 0;
    search(m.field(), n, &cands, 0, &mut Vec::new(), &mut best);
    best
}

pub fn word(s: &str) -> CyclicWord {
    s.parse().unwrap()
}

pub fn sum_of_words(words: &[CyclicWord], field: PrimeField) -> DieudonneModule {
    let mut m = DieudonneModule::zero(field);
    for w in words {
        m = m.direct_sum(&word_module(w, field)).unwrap();
    }
    m
}

pub fn letters(bits: &[bool]) -> Vec<Letter> {
    bits.iter().map(|&b| if b { Letter::F } else { Letter::V }).collect()
}
