//! Seeded sampling of field elements.
//!
//! The generator is ChaCha20 (RFC 8439 block function, 20 rounds) keyed by the
//! 64-bit seed in little-endian order followed by 24 zero bytes, with stream id
//! and nonce zero. Each 32-bit word of keystream is consumed little-endian.
//! A uniform element of GF(q) is drawn by rejection: take a word `w`, accept it
//! if `w < floor(2^32 / q) * q` and return `w mod q`. A nonzero element is
//! `1 + u` where `u` is drawn the same way modulo `q - 1`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::linalg::PrimeField;

pub struct FieldSampler {
    rng: ChaCha20Rng,
}

impl FieldSampler {
    pub fn from_seed(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        Self {
            rng: ChaCha20Rng::from_seed(key),
        }
    }

    fn below(&mut self, bound: u32) -> u32 {
        debug_assert!(bound > 0);
        let limit = (1u64 << 32) / bound as u64 * bound as u64;
        loop {
            let w = self.rng.next_u32() as u64;
            if w < limit {
                return (w % bound as u64) as u32;
            }
        }
    }

    pub fn element(&mut self, field: PrimeField) -> u32 {
        self.below(field.modulus())
    }

    pub fn nonzero(&mut self, field: PrimeField) -> u32 {
        1 + self.below(field.modulus() - 1)
    }

    pub fn elements(&mut self, field: PrimeField, count: usize) -> Vec<u32> {
        (0..count).map(|_| self.element(field)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let f = PrimeField::new(32003).unwrap();
        let a = FieldSampler::from_seed(7).elements(f, 64);
        let b = FieldSampler::from_seed(7).elements(f, 64);
        let c = FieldSampler::from_seed(8).elements(f, 64);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn nonzero_never_zero() {
        for q in [2u64, 3, 7] {
            let f = PrimeField::new(q).unwrap();
            let mut s = FieldSampler::from_seed(1);
            assert!((0..500).all(|_| s.nonzero(f) != 0));
        }
    }
}
