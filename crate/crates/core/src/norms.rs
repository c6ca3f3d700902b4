//! The three norms and their diagnostics.
//!
//! * weighted space: `||x|| = sum_k |x_{k+1}/(k+1) - x_k/k|` (members also
//!   need `x_k/k -> 0`),
//! * `bv0`: `||x||_0 = sum_k |x_{k+1} - x_k|` on vanishing sequences,
//! * `l1`: `||x||_1 = sum_k |x_k|`.
//!
//! On a `FiniteSeq` with `support_max = M` every series above is a finite
//! sum: the terms vanish for `k > M`, and the k = M term (`|0 - x_M/M|`
//! for the weighted norm) is included. The truncation point is ours, not
//! part of the norm definitions, which are infinite sums.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bracket::{modulus, Bounds, DEFAULT_PREC_BITS};
use crate::error::Error;
use crate::lazy::{CoordValue, LazySeq};
use crate::scalar::{rat_int, rat_recip, Rat, Scalar};
use crate::seq::FiniteSeq;
use crate::sum::{crossing_index, pairwise_sum_bounds, Crossing};

/// The three sequence spaces in play. `X` is the weighted-difference space;
/// c00 sits densely inside all of them, with `l1` inside `bv0` inside `X`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    X,
    Bv0,
    L1,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::X, Space::Bv0, Space::L1];

    pub fn parse(s: &str) -> Result<Space, Error> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Space::X),
            "bv0" => Ok(Space::Bv0),
            "l1" => Ok(Space::L1),
            other => Err(Error::Parse(format!("unknown space {other:?}"))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::X => write!(f, "X"),
            Space::Bv0 => write!(f, "bv0"),
            Space::L1 => write!(f, "l1"),
        }
    }
}

/// A computed norm: exact rational, or a certified bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormValue {
    pub space: Space,
    pub value: Bounds,
}

/// Options for lazy-family norm evaluation: where to truncate the series
/// when only a bracket is available, and how tight coordinate enclosures
/// should be.
#[derive(Clone, Copy, Debug)]
pub struct NormOptions {
    pub truncation: u64,
    pub prec_bits: u32,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            truncation: 256,
            prec_bits: DEFAULT_PREC_BITS,
        }
    }
}

/// The k-th term of the `space` norm series, given coordinates x_k, x_{k+1}.
fn term_exact(space: Space, k: u64, xk: &Scalar, xk1: &Scalar, prec: u32) -> Bounds {
    let diff = match space {
        Space::X => {
            let a = xk1 * &Scalar::Rational(rat_recip(k + 1));
            let b = xk * &Scalar::Rational(rat_recip(k));
            &a - &b
        }
        Space::Bv0 => xk1 - xk,
        Space::L1 => xk.clone(),
    };
    modulus(&diff, prec)
}

/// Norm of a finitely supported sequence: always defined (c00 is in every
/// space), exact whenever each term's modulus is rational.
pub fn norm_finite(x: &FiniteSeq, space: Space) -> NormValue {
    norm_finite_prec(x, space, DEFAULT_PREC_BITS)
}

pub fn norm_finite_prec(x: &FiniteSeq, space: Space, prec: u32) -> NormValue {
    let value = match space {
        Space::L1 => {
            let terms: Vec<Bounds> = x.iter().map(|(_, v)| modulus(v, prec)).collect();
            sum_terms(terms)
        }
        Space::X | Space::Bv0 => {
            let keys = x.difference_support();
            let terms: Vec<Bounds> = keys
                .iter()
                .map(|&k| term_exact(space, k, &x.get(k), &x.get(k + 1), prec))
                .collect();
            sum_terms(terms)
        }
    };
    NormValue { space, value }
}

fn sum_terms(terms: Vec<Bounds>) -> Bounds {
    fn go(terms: &[Bounds]) -> Bounds {
        match terms.len() {
            0 => Bounds::zero(),
            1 => terms[0].clone(),
            n => {
                let (a, b) = terms.split_at(n / 2);
                go(a).add(&go(b))
            }
        }
    }
    go(&terms)
}

/// Membership verdict for a lazy family in a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NotMember,
    Undecided,
}

/// Decides membership of the closed-form families.
pub fn membership(seq: &LazySeq, space: Space) -> MembershipVerdict {
    match seq {
        LazySeq::Power { p } => power_membership(p, space),
        LazySeq::Exponential { lambda } => exponential_membership(lambda, space),
        LazySeq::Constant { c } => constant_membership(c, space),
        LazySeq::EigvecUnbounded { .. } => MembershipVerdict {
            verdict: Verdict::Member,
            witness: "coordinates decay super-geometrically: |y_{k+1}/y_k| = |lambda|/|w|^k -> 0"
                .into(),
        },
        LazySeq::Scaled { scale, inner } => {
            if scale.is_zero() {
                MembershipVerdict {
                    verdict: Verdict::Member,
                    witness: "zero sequence".into(),
                }
            } else {
                membership(inner, space)
            }
        }
        LazySeq::Custom { label, .. } => MembershipVerdict {
            verdict: Verdict::Undecided,
            witness: format!("custom family {label} carries no closed-form criterion"),
        },
    }
}

fn power_membership(p: &Rat, space: Space) -> MembershipVerdict {
    let (member, cutoff, reason_in, reason_out) = match space {
        Space::X => (
            p < &Rat::one(),
            "1",
            "telescoping: sum of k^(p-1) - (k+1)^(p-1) converges and k^(p-1) -> 0",
            "k^p / k = k^(p-1) does not vanish",
        ),
        Space::Bv0 => (
            p.is_negative(),
            "0",
            "decreasing to zero with telescoping variation",
            "k^p does not vanish",
        ),
        Space::L1 => (
            p < &rat_int(-1),
            "-1",
            "p-series converges for p < -1",
            "p-series diverges for p >= -1",
        ),
    };
    MembershipVerdict {
        verdict: if member {
            Verdict::Member
        } else {
            Verdict::NotMember
        },
        witness: if member {
            format!("p < {cutoff}: {reason_in}")
        } else {
            format!("p >= {cutoff}: {reason_out}")
        },
    }
}

fn exponential_membership(lambda: &Scalar, space: Space) -> MembershipVerdict {
    use std::cmp::Ordering::*;
    let contracting = lambda.abs_cmp(&Rat::one()) == Less;
    match space {
        Space::X => {
            if lambda.is_one() {
                MembershipVerdict {
                    verdict: Verdict::Member,
                    witness: "lambda = 1: constant sequence, norm terms 1/(k(k+1))".into(),
                }
            } else if contracting {
                MembershipVerdict {
                    verdict: Verdict::Member,
                    witness: "|lambda| < 1: summable, and l1 embeds in X".into(),
                }
            } else {
                MembershipVerdict {
                    verdict: Verdict::NotMember,
                    witness: if lambda.abs_cmp(&Rat::one()) == Greater {
                        "|lambda| > 1: lambda^k / k does not vanish".into()
                    } else {
                        "|lambda| = 1, lambda != 1: norm terms dominate a harmonic series".into()
                    },
                }
            }
        }
        Space::Bv0 | Space::L1 => {
            if contracting {
                MembershipVerdict {
                    verdict: Verdict::Member,
                    witness: "|lambda| < 1: geometric decay".into(),
                }
            } else {
                MembershipVerdict {
                    verdict: Verdict::NotMember,
                    witness: "|lambda| >= 1: coordinates do not vanish".into(),
                }
            }
        }
    }
}

fn constant_membership(c: &Scalar, space: Space) -> MembershipVerdict {
    if c.is_zero() {
        return MembershipVerdict {
            verdict: Verdict::Member,
            witness: "zero sequence".into(),
        };
    }
    match space {
        Space::X => MembershipVerdict {
            verdict: Verdict::Member,
            witness: "norm terms |c|/(k(k+1)) telescope to |c|".into(),
        },
        Space::Bv0 | Space::L1 => MembershipVerdict {
            verdict: Verdict::NotMember,
            witness: "nonzero constants do not vanish".into(),
        },
    }
}

/// Norm of a lazy family. Exact where a closed form exists; otherwise a
/// bracket `[partial sum, partial sum + tail bound]` at the requested
/// truncation. Errors when the family is provably outside the space (or
/// carries no decision rule).
pub fn norm_lazy(seq: &LazySeq, space: Space, opts: &NormOptions) -> Result<NormValue, Error> {
    match membership(seq, space).verdict {
        Verdict::Member => {}
        Verdict::NotMember => {
            return Err(Error::NotAMember {
                space,
                reason: seq.describe(),
            })
        }
        Verdict::Undecided => {
            // a certified tail rule still allows a bracket; otherwise bail
            if seq.tail_bound_prec(space, opts.truncation, opts.prec_bits).is_err() {
                return Err(Error::Undecidable(seq.describe()));
            }
        }
    }
    if let Some(value) = closed_form_norm(seq, space, opts.prec_bits) {
        return Ok(NormValue { space, value });
    }
    let partial = partial_norm_sum(seq, space, opts.truncation, opts.prec_bits);
    let tail = seq.tail_bound_prec(space, opts.truncation, opts.prec_bits)?;
    Ok(NormValue {
        space,
        value: Bounds::bracket(partial.lo().clone(), partial.hi() + tail),
    })
}

/// Closed forms, where the series telescopes or sums geometrically:
///
/// * power family, weighted norm, any `p < 1`: exactly 1;
/// * power family, variation norm, `p < 0`: exactly 1;
/// * constant `c`: weighted norm exactly `|c|`;
/// * exponential `0 < lambda < 1` (rational): weighted norm telescopes to
///   exactly `lambda`;
/// * exponential `|lambda| < 1`: variation norm `|1 - lambda||lambda|/(1 - |lambda|)`
///   and summing norm `|lambda|/(1 - |lambda|)` (exact for rational moduli);
/// * scaled families: `|scale| * closed form` when both sides are available.
fn closed_form_norm(seq: &LazySeq, space: Space, prec: u32) -> Option<Bounds> {
    match (seq, space) {
        (LazySeq::Power { p }, Space::X) if p < &Rat::one() => Some(Bounds::Exact(Rat::one())),
        (LazySeq::Power { p }, Space::Bv0) if p.is_negative() => Some(Bounds::Exact(Rat::one())),
        (LazySeq::Constant { c }, Space::X) => Some(modulus(c, prec)),
        (LazySeq::Exponential { lambda }, Space::X) => {
            if lambda.is_one() {
                return Some(Bounds::Exact(Rat::one()));
            }
            let lam = lambda.as_rational()?;
            if lam.is_positive() && lam < &Rat::one() {
                // terms lambda^k/k - lambda^(k+1)/(k+1) telescope to lambda
                Some(Bounds::Exact(lam.clone()))
            } else {
                None
            }
        }
        (LazySeq::Exponential { lambda }, Space::Bv0 | Space::L1)
            if lambda.abs_cmp(&Rat::one()) == std::cmp::Ordering::Less =>
        {
            let m = modulus(lambda, prec);
            if m.hi() >= &Rat::one() {
                return None; // enclosure touches 1; fall back to bracketing
            }
            // t -> t/(1-t) is increasing on [0, 1), so endpoints map to endpoints
            let geo = Bounds::bracket(
                m.lo() / (Rat::one() - m.lo()),
                m.hi() / (Rat::one() - m.hi()),
            );
            match space {
                Space::L1 => Some(geo),
                Space::Bv0 => {
                    let factor = modulus(&(&Scalar::one() - lambda), prec);
                    Some(factor.mul_nonneg(&geo))
                }
                Space::X => unreachable!(),
            }
        }
        (LazySeq::Scaled { scale, inner }, _) => {
            let inner_norm = closed_form_norm(inner, space, prec)?;
            Some(modulus(scale, prec).mul_nonneg(&inner_norm))
        }
        _ => None,
    }
}

/// Exact partial sum of the `space` norm series of a lazy family to index
/// `K` (enclosure when coordinates are irrational).
pub fn partial_norm_sum(seq: &LazySeq, space: Space, k_max: u64, prec: u32) -> Bounds {
    if let LazySeq::Exponential { lambda } = seq {
        if let Some(l) = lambda.as_rational() {
            return exponential_partial_rational(l, space, k_max);
        }
    }
    pairwise_sum_bounds(
        &mut |k| lazy_term(seq, space, k, prec),
        1,
        k_max,
    )
}

/// Rational exponential families factor termwise: with `lambda = s p/q`
/// reduced, the k-th norm term is
///
/// * `p^k |s p k - q(k+1)| / (q^(k+1) k(k+1))` in the weighted norm,
/// * `p^k |s p - q| / q^(k+1)` in the variation norm,
/// * `p^k / q^k` in the summing norm,
///
/// so the whole partial sum is accumulated as one integer numerator over
/// the common denominator `q^(K+1) lcm(1..K+1)`, with a single reduction
/// at the end. Per-term `Ratio` reductions would run big-by-small binary
/// gcds against the `q^k` factors — quadratic in K and catastrophically
/// slow by `K ~ 10^4`.
fn exponential_partial_rational(lambda: &Rat, space: Space, k_max: u64) -> Bounds {
    use num_bigint::BigInt;
    if k_max == 0 {
        return Bounds::zero();
    }
    let num = lambda.numer();
    let den = lambda.denom();
    let p = num.abs();
    let l = match space {
        // k(k+1) divides lcm(1..K+1): k and k+1 are coprime and both divide it
        Space::X => lcm_upto(k_max + 1),
        Space::Bv0 | Space::L1 => BigInt::one(),
    };
    let variation = (num - den).abs();

    let mut p_pow = BigInt::one(); // p^k entering iteration k
    let mut q_pow = crate::bracket::pow_rat(&Rat::from_integer(den.clone()), k_max as i64 - 1)
        .to_integer(); // q^(K-k) at k = 1
    let mut numerator = BigInt::zero();
    for k in 1..=k_max {
        p_pow *= &p;
        let contribution = match space {
            Space::X => {
                let c = (num * BigInt::from(k) - den * BigInt::from(k + 1)).abs();
                let scale = &l / (BigInt::from(k) * BigInt::from(k + 1));
                &p_pow * c * &q_pow * scale
            }
            Space::Bv0 => &p_pow * &variation * &q_pow,
            Space::L1 => &p_pow * &q_pow * den, // rebase q^(K-k) to q^K total
        };
        numerator += contribution;
        if k < k_max {
            q_pow /= den; // exact by construction
        }
    }
    let denominator = crate::bracket::pow_rat(&Rat::from_integer(den.clone()), k_max as i64 + 1)
        .to_integer()
        * &l;
    Bounds::Exact(Rat::new(numerator, denominator))
}

/// `lcm(1..=n)` by prime sieve: the product over primes `pr <= n` of the
/// largest power of `pr` not exceeding `n`.
fn lcm_upto(n: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n_us = n as usize;
    let mut is_composite = vec![false; n_us + 1];
    let mut acc = BigInt::one();
    for pr in 2..=n_us {
        if is_composite[pr] {
            continue;
        }
        let mut multiple = pr * pr;
        while multiple <= n_us {
            is_composite[multiple] = true;
            multiple += pr;
        }
        let mut power = pr as u64;
        while power <= n / pr as u64 {
            power *= pr as u64;
        }
        acc *= BigInt::from(power);
    }
    acc
}

fn lazy_term(seq: &LazySeq, space: Space, k: u64, prec: u32) -> Bounds {
    let xk = seq.coord_prec(k, prec);
    let xk1 = seq.coord_prec(k + 1, prec);
    match (xk, xk1) {
        (CoordValue::Exact(a), CoordValue::Exact(b)) => term_exact(space, k, &a, &b, prec),
        (xk, xk1) => {
            let a = coord_interval(xk);
            let b = coord_interval(xk1);
            match space {
                Space::X => b
                    .scale(&rat_recip(k + 1))
                    .sub(&a.scale(&rat_recip(k)))
                    .abs(),
                Space::Bv0 => b.sub(&a).abs(),
                Space::L1 => a.abs(),
            }
        }
    }
}

fn coord_interval(c: CoordValue) -> Bounds {
    match c {
        CoordValue::Exact(s) => match s.as_rational() {
            Some(r) => Bounds::Exact(r.clone()),
            None => panic!("mixed complex/interval coordinates are not supported"),
        },
        CoordValue::Approx(b) => b,
    }
}

/// A divergence certificate: the norm series of a non-member provably
/// exceeds the threshold at `index`.
#[derive(Clone, Debug)]
pub struct DivergenceWitness {
    pub index: u64,
    pub partial_sum: Bounds,
    pub threshold: Rat,
}

/// For an exponential family provably outside the weighted space, returns
/// the smallest truncation index whose exact partial norm sum exceeds
/// `threshold`.
///
/// Termination: for `|lambda| = 1`, `lambda != 1` the k-th term dominates
/// `|Im(lambda)|/(k+1)` (and for `lambda = -1` equals `1/k + 1/(k+1)`), a
/// divergent harmonic comparison; for `|lambda| > 1` the terms themselves
/// grow without bound.
pub fn divergence_witness(
    seq: &LazySeq,
    threshold: &Rat,
) -> Result<DivergenceWitness, Error> {
    let lambda = match seq {
        LazySeq::Exponential { lambda } => lambda.clone(),
        other => {
            return Err(Error::Unsupported(format!(
                "divergence witness is defined for exponential families, got {}",
                other.describe()
            )))
        }
    };
    if membership(seq, Space::X).verdict == Verdict::Member {
        return Err(Error::NotDivergent);
    }
    // On the unit circle the k-th term factors: |lambda^{k+1}/(k+1) -
    // lambda^k/k| = |lambda^k| |lambda/(k+1) - 1/k| = |lambda/(k+1) - 1/k|.
    // Using the factored form keeps every term's components O(log k) bits;
    // the raw form would drag lambda^k's exact numerators through the
    // 10^4-term range these witnesses reach.
    let unit_modulus = lambda.abs_sq() == Rat::one();
    let lam = lambda.clone();
    let mut term = move |k: u64, prec: u32| -> Bounds {
        if unit_modulus {
            let diff = &(&lam * &Scalar::Rational(rat_recip(k + 1))) - &Scalar::Rational(rat_recip(k));
            modulus(&diff, prec)
        } else {
            lazy_term(&LazySeq::exponential(lam.clone()), Space::X, k, prec)
        }
    };
    let lam_f = scalar_f64(&lambda);
    let Crossing {
        index, partial_sum, ..
    } = crossing_index(
        &mut term,
        &mut |k| {
            let zk = powi_c(lam_f, k);
            let zk1 = powi_c(lam_f, k + 1);
            let re = zk1.0 / (k + 1) as f64 - zk.0 / k as f64;
            let im = zk1.1 / (k + 1) as f64 - zk.1 / k as f64;
            re.hypot(im)
        },
        threshold,
    );
    Ok(DivergenceWitness {
        index,
        partial_sum,
        threshold: threshold.clone(),
    })
}

// Minimal complex f64 helpers for the prescan (exactness never depends on these).
fn scalar_f64(s: &Scalar) -> (f64, f64) {
    use num_traits::ToPrimitive;
    match s {
        Scalar::Rational(r) => (r.to_f64().unwrap_or(0.0), 0.0),
        Scalar::Complex { re, im } => (
            re.to_f64().unwrap_or(0.0),
            im.to_f64().unwrap_or(0.0),
        ),
    }
}

fn powi_c(z: (f64, f64), k: u64) -> (f64, f64) {
    let r = z.0.hypot(z.1).powf(k as f64);
    let th = z.1.atan2(z.0) * k as f64;
    (r * th.cos(), r * th.sin())
}

/// Per-member report of the convergence diagnostic.
#[derive(Clone, Debug)]
pub struct MemberReport {
    /// Nonzero coordinate differences `x^(n)_k - limit_k`.
    pub deltas: FiniteSeq,
    /// Exact tail of the member's weighted norm series beyond `K`.
    pub tail: Bounds,
}

/// Desk-scale stand-in for the coordinatewise-plus-uniform-tail
/// characterization of convergence: per-member coordinate deltas against
/// the limit, and `sup_n sum_{k>K} |x^(n)_{k+1}/(k+1) - x^(n)_k/k|` for the
/// supplied `K`. A finite family is a diagnostic, not a decision procedure.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub members: Vec<MemberReport>,
    pub sup_tail: Bounds,
    pub truncation: u64,
}

pub fn converges_diagnostic(
    family: &[FiniteSeq],
    limit: &FiniteSeq,
    k: u64,
) -> ConvergenceReport {
    let mut members = Vec::with_capacity(family.len());
    let mut sup_tail = Bounds::zero();
    for x in family {
        let deltas = x.sub(limit);
        let tail = tail_of_finite(x, k);
        sup_tail = sup_tail.max(&tail);
        members.push(MemberReport { deltas, tail });
    }
    ConvergenceReport {
        members,
        sup_tail,
        truncation: k,
    }
}

/// Exact tail `sum_{j>k} |x_{j+1}/(j+1) - x_j/j|` of a finite sequence.
fn tail_of_finite(x: &FiniteSeq, k: u64) -> Bounds {
    let terms: Vec<Bounds> = x
        .difference_support()
        .into_iter()
        .filter(|&j| j > k)
        .map(|j| term_exact(Space::X, j, &x.get(j), &x.get(j + 1), DEFAULT_PREC_BITS))
        .collect();
    let mut it = terms.into_iter();
    let mut acc = Bounds::zero();
    for t in &mut it {
        acc = acc.add(&t);
    }
    acc
}
