//! Counter-based uniform stream.
//!
//! Draw `i` of a stream is the `i`-th 64-bit output of a ChaCha8 generator
//! keyed by the seed, reached by seeking rather than by stepping. Any
//! partition of the index range across threads reproduces the same values.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformStream {
    seed: u64,
}

#[inline]
fn to_open_unit(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    fn generator_at(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_word_pos(2 * u128::from(index));
        rng
    }

    pub fn bits(&self, index: u64) -> u64 {
        self.generator_at(index).next_u64()
    }

    /// Uniform draw on the open interval `(0, 1)`.
    pub fn uniform(&self, index: u64) -> f64 {
        to_open_unit(self.bits(index))
    }

    /// Writes draws `start..start + out.len()` into `out`.
    pub fn fill_uniform(&self, start: u64, out: &mut [f64]) {
        let mut rng = self.generator_at(start);
        for u in out {
            *u = to_open_unit(rng.next_u64());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_pure_functions_of_seed_and_index() {
        let a = UniformStream::new(7);
        let b = UniformStream::new(7);
        for i in [0u64, 1, 2, 1_000_000, u64::MAX / 4] {
            assert_eq!(a.uniform(i).to_bits(), b.uniform(i).to_bits());
        }
        assert_ne!(UniformStream::new(8).uniform(0), a.uniform(0));
    }

    #[test]
    fn chunked_fill_matches_random_access() {
        let s = UniformStream::new(3);
        let mut whole = vec![0.0; 300];
        s.fill_uniform(0, &mut whole);
        for (start, len) in [(0usize, 1usize), (1, 63), (17, 100), (64, 64), (299, 1)] {
            let mut part = vec![0.0; len];
            s.fill_uniform(start as u64, &mut part);
            assert_eq!(part, whole[start..start + len]);
        }
        for i in [0usize, 5, 31, 32, 33, 255] {
            assert_eq!(s.uniform(i as u64), whole[i]);
        }
    }

    #[test]
    fn draws_stay_in_open_unit_interval() {
        let s = UniformStream::new(1);
        let n = 100_000;
        let mut u = vec![0.0; n];
        s.fill_uniform(0, &mut u);
        assert!(u.iter().all(|&x| x > 0.0 && x < 1.0));
        assert_eq!(to_open_unit(0), 0.5 / (1u64 << 52) as f64);
        assert_eq!(to_open_unit(u64::MAX), 1.0 - 0.5 / (1u64 << 52) as f64);
        // 4σ band for the mean of n uniforms
        let sd = (1.0 / 12.0 / n as f64).sqrt();
        assert!((u.iter().sum::<f64>() / n as f64 - 0.5).abs() < 4.0 * sd);
    }
}
