//! Deterministic sampling of small scalars.
//!
//! Every "generic" choice in the toolkit is drawn from this stream: sample,
//! test the genericity predicate, and retry with an incremented seed. The
//! predicates are all open conditions, so the retry loop terminates fast.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SeedStream {
    state: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> SeedStream {
        SeedStream { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Small scalar in the fixed range -9..=9.
    pub fn small_scalar(&mut self, field: FieldSpec) -> Scalar {
        let n = (self.next_u64() % 19) as i64 - 9;
        Scalar::from_i64(field, n)
    }

    pub fn vector(&mut self, field: FieldSpec, dim: usize) -> Vec<Scalar> {
        (0..dim).map(|_| self.small_scalar(field)).collect()
    }
}

/// Deterministic vector of small scalars for the given seed.
pub fn sample_vector(field: FieldSpec, dim: usize, seed: u64) -> Vec<Scalar> {
    SeedStream::new(seed).vector(field, dim)
}

/// Per-trial seed derived from a master seed; order-independent aggregation
/// relies on this.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut s = SeedStream::new(master ^ index.wrapping_mul(0x9e3779b97f4a7c15));
    s.next_u64()
}

/// Retry bound for genericity searches.
pub const GENERICITY_TRIES: u64 = 64;

/// Samples with incremented seeds until `attempt` accepts, up to the bound.
pub fn find_generic<T>(seed: u64, what: &str, mut attempt: impl FnMut(u64) -> Option<T>) -> Result<T> {
    for k in 0..GENERICITY_TRIES {
        if let Some(t) = attempt(seed.wrapping_add(k)) {
            return Ok(t);
        }
    }
    Err(Error::Precondition(format!(
        "no generic {what} found after {GENERICITY_TRIES} seeded attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let f = FieldSpec::Rationals;
        let a = sample_vector(f, 3, 0);
        let b = sample_vector(f, 3, 0);
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_seeds_give_distinct_vectors() {
        let f = FieldSpec::Rationals;
        let mut seen = Vec::new();
        for seed in 0..100u64 {
            let v = sample_vector(f, 8, seed);
            assert!(!seen.contains(&v), "collision at seed {seed}");
            seen.push(v);
        }
    }
}
