//! Seeded random inputs for the property suites.

use rand::Rng;

use crate::scalar::{rat, Rat, Scalar};
use crate::seq::FiniteSeq;

/// Shape of the random corpus: indices in `1..=max_support`, coordinates
/// `p/q` with `|p| <= max_numer` and `1 <= q <= max_den`.
#[derive(Clone, Copy, Debug)]
pub struct SeqParams {
    pub max_support: u64,
    pub max_numer: i64,
    pub max_den: i64,
    pub max_nnz: usize,
}

impl Default for SeqParams {
    fn default() -> Self {
        // the suite corpus: support within 64, numerators and denominators
        // within 10^6
        SeqParams {
            max_support: 64,
            max_numer: 1_000_000,
            max_den: 1_000_000,
            max_nnz: 24,
        }
    }
}

pub fn random_rat<R: Rng>(rng: &mut R, params: &SeqParams) -> Rat {
    rat(
        rng.gen_range(-params.max_numer..=params.max_numer),
        rng.gen_range(1..=params.max_den),
    )
}

pub fn random_scalar<R: Rng>(rng: &mut R, params: &SeqParams) -> Scalar {
    Scalar::from_rat(random_rat(rng, params))
}

/// A random rational element of c00 under the given shape.
pub fn random_finite_seq<R: Rng>(rng: &mut R, params: &SeqParams) -> FiniteSeq {
    let nnz = rng.gen_range(0..=params.max_nnz);
    FiniteSeq::from_pairs((0..nnz).map(|_| {
        (
            rng.gen_range(1..=params.max_support),
            random_scalar(rng, params),
        )
    }))
}

/// A random nonzero sequence (resamples until nonzero).
pub fn random_nonzero_seq<R: Rng>(rng: &mut R, params: &SeqParams) -> FiniteSeq {
    loop {
        let x = random_finite_seq(rng, params);
        if !x.is_zero() {
            return x;
        }
    }
}
