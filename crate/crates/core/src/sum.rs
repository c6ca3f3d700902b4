//! Exact summation of long series and threshold-crossing search.
//!
//! Harmonic-flavoured partial sums reduce to a common denominator near
//! lcm(1..K), which reaches hundreds of kilobits for K ~ 10^5. Summing
//! pairwise keeps the big reductions at the top of the tree instead of
//! paying them once per term, which is the difference between seconds and
//! hours at that scale.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use crate::bracket::{Bounds, DEFAULT_PREC_BITS};
use crate::scalar::Rat;

const LEAF: u64 = 32;
const MAX_PREC_BITS: u32 = 4096;

/// Exact pairwise sum of `term(k)` over the inclusive range `[lo, hi]`.
/// Empty ranges (`lo > hi`) sum to zero.
pub fn pairwise_sum<F>(term: &mut F, lo: u64, hi: u64) -> Rat
where
    F: FnMut(u64) -> Rat,
{
    if lo > hi {
        return Rat::zero();
    }
    if hi - lo < LEAF {
        let mut acc = Rat::zero();
        for k in lo..=hi {
            acc += term(k);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum(term, lo, mid) + pairwise_sum(term, mid + 1, hi)
}

/// Pairwise sum of enclosures over `[lo, hi]`.
pub fn pairwise_sum_bounds<F>(term: &mut F, lo: u64, hi: u64) -> Bounds
where
    F: FnMut(u64) -> Bounds,
{
    if lo > hi {
        return Bounds::zero();
    }
    if hi - lo < LEAF {
        let mut acc = Bounds::zero();
        for k in lo..=hi {
            acc = acc.add(&term(k));
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum_bounds(term, lo, mid).add(&pairwise_sum_bounds(term, mid + 1, hi))
}

/// Result of a threshold-crossing search: the smallest index whose partial
/// sum exceeds the threshold, together with that partial sum.
pub struct Crossing {
    pub index: u64,
    pub partial_sum: Bounds,
    /// Bracket tightness the verdict was certified at.
    pub prec_bits: u32,
}

/// Finds the smallest `K >= 1` with `sum_{k=1..K} term(k, prec) > threshold`
/// for a series of nonnegative terms.
///
/// A plain f64 scan locates the candidate region; the verdict itself comes
/// from exact enclosures (pairwise-summed into the window, then walked one
/// exact term at a time), so the returned index is certified: the partial
/// sum at `index - 1` is provably `<= threshold` and at `index` provably
/// `> threshold`. When an enclosure straddles the threshold the whole
/// search retries at doubled precision. The series must actually cross the
/// threshold; divergence is the caller's contract.
pub fn crossing_index<FE, FF>(term: &mut FE, term_f64: &mut FF, threshold: &Rat) -> Crossing
where
    FE: FnMut(u64, u32) -> Bounds,
    FF: FnMut(u64) -> f64,
{
    let thr_f64 = threshold.to_f64().unwrap_or(f64::MAX);
    let slack = 1e-9 * thr_f64.abs().max(1.0);

    // Phase 1: f64 scan for the first index comfortably past the threshold.
    let mut sum = 0.0_f64;
    let mut k = 0u64;
    let mut first_near: Option<u64> = None;
    loop {
        k += 1;
        sum += term_f64(k);
        if sum > thr_f64 - slack {
            first_near.get_or_insert(k);
        }
        if sum > thr_f64 + slack {
            break;
        }
    }
    let start = first_near.expect("crossing recorded on break").saturating_sub(1);

    // Phase 2: certified search starting just before the candidate window.
    // Half the default tightness is ample here (the enclosure slack stays
    // ~2^-40 below any realistic threshold gap); a straddle retries tighter.
    let mut prec = DEFAULT_PREC_BITS / 2;
    'retry: loop {
        let mut idx = start;
        let mut partial = pairwise_sum_bounds(&mut |j| term(j, prec), 1, start);
        // Trim backward until the partial sum is certifiably <= threshold
        // (the f64 scan makes this a no-op in practice). An untrimmable
        // negative threshold simply starts the forward walk at k = 1.
        loop {
            match partial.cmp_rat(threshold) {
                Some(Ordering::Greater) if idx > 0 => {
                    partial = partial.sub(&term(idx, prec));
                    idx -= 1;
                }
                Some(_) => break,
                None => {
                    prec = retry_prec(prec);
                    continue 'retry;
                }
            }
        }
        // Walk forward; each step certifies its verdict exactly.
        loop {
            idx += 1;
            partial = partial.add(&term(idx, prec));
            match partial.cmp_rat(threshold) {
                Some(Ordering::Greater) => {
                    return Crossing {
                        index: idx,
                        partial_sum: partial,
                        prec_bits: prec,
                    }
                }
                Some(_) => {}
                None => {
                    prec = retry_prec(prec);
                    continue 'retry;
                }
            }
        }
    }
}

fn retry_prec(prec: u32) -> u32 {
    assert!(
        prec < MAX_PREC_BITS,
        "partial sum indistinguishable from threshold at {MAX_PREC_BITS} bits"
    );
    prec * 2
}
