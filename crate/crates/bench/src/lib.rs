//! Fixed instances shared by the benchmarks.

use supportminors::minrank::{gen_planted, gen_random};
use supportminors::{MinRankInstance, PrimeField};

pub const Q: u64 = 32003;

/// `(m, n, r, K)` shapes exercised by the benchmarks.
pub const SHAPES: [(usize, usize, usize, usize); 3] = [(4, 4, 2, 3), (4, 4, 2, 8), (5, 5, 2, 6)];

pub fn random(m: usize, n: usize, r: usize, k: usize) -> MinRankInstance {
    gen_random(PrimeField::new(Q).unwrap(), m, n, k, r, 1).unwrap()
}

pub fn planted(q: u64, m: usize, n: usize, r: usize, k: usize) -> MinRankInstance {
    gen_planted(PrimeField::new(q).unwrap(), m, n, k, r, 1)
        .unwrap()
        .0
}
