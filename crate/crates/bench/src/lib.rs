//! Shared input builders for the benchmark suite.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqlab_core::generate::{random_finite_seq, SeqParams};
use seqlab_core::{FiniteSeq, Scalar};

/// Dense prefix of length `n` with small rational entries.
pub fn dense_seq(n: u64) -> FiniteSeq {
    FiniteSeq::from_pairs((1..=n).map(|k| {
        let num = (k % 17) as i64 - 8;
        let den = (k % 7 + 1) as i64;
        (k, Scalar::from_ratio(num, den))
    }))
}

/// Seeded random corpus matching the suite shape.
pub fn corpus(seed: u64, count: usize) -> Vec<FiniteSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = SeqParams::default();
    (0..count)
        .map(|_| random_finite_seq(&mut rng, &params))
        .collect()
}
