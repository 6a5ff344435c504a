//! Fixtures shared by the criterion benches.

use dieudonne::{Matrix, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform `n x n` matrix over `field`, reproducible from `seed`.
pub fn random_matrix(field: PrimeField, n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, rng.random_range(0..field.p()));
        }
    }
    m
}

/// A matrix of rank about `n / 2`: the product of `n x r` and `r x n` factors.
pub fn half_rank_matrix(field: PrimeField, n: usize, seed: u64) -> Matrix {
    let r = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Matrix::zeros(field, n, r);
    let mut b = Matrix::zeros(field, r, n);
    for i in 0..n {
        for j in 0..r {
            a.set(i, j, rng.random_range(0..field.p()));
            b.set(j, i, rng.random_range(0..field.p()));
        }
    }
    a.mul(&b).expect("inner dimensions agree")
}
