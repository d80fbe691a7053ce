//! Seeded samplers for exact rational data.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratgeom::{rat, RMatrix, RVector, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derived seed for the `index`-th independent job of a run.
pub fn job_seed(seed: u64, index: u64) -> u64 {
    let mut r = rng(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    r.gen()
}

/// `k / den` with `k` uniform in `lo..=hi`.
pub fn rational(r: &mut SeededRng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(r.gen_range(lo..=hi), den)
}

pub fn int_vector(r: &mut SeededRng, dim: usize, lo: i64, hi: i64) -> RVector {
    RVector::new((0..dim).map(|_| rat(r.gen_range(lo..=hi), 1)).collect())
}

pub fn matrix(r: &mut SeededRng, rows: usize, cols: usize, lo: i64, hi: i64, den: i64) -> RMatrix {
    let data: Vec<Rational> = (0..rows * cols).map(|_| rational(r, lo, hi, den)).collect();
    RMatrix::new(rows, cols, data).expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = matrix(&mut rng(7), 3, 2, -1000, 1000, 1000);
        let b = matrix(&mut rng(7), 3, 2, -1000, 1000, 1000);
        assert_eq!(a, b);
        assert_ne!(job_seed(7, 0), job_seed(7, 1));
        let v = int_vector(&mut rng(1), 4, -3, 3);
        assert!(v
            .entries()
            .iter()
            .all(|x| x.numer().magnitude() <= &3u32.into()));
    }
}
