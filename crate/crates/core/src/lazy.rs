//! Analytic sequence families with closed-form coordinates and certified
//! tail bounds.
//!
//! Tail bounds used below, each an upper bound on the relevant norm series
//! beyond index K (`q` denotes a rational upper bound on the modulus in
//! question, `||.||` the weighted-difference norm, `||.||_0` the variation
//! norm, `||.||_1` the summing norm):
//!
//! * power `k^p`, weighted norm, `p < 1`: the series telescopes, the partial
//!   sum to K is `1 - (K+1)^(p-1)`, so the tail is exactly `(K+1)^(p-1)`.
//! * power, variation norm, `p < 0`: telescopes to `(K+1)^p`.
//! * power, summing norm, `p < -1`: `sum_{k>K} k^p <= int_K^inf x^p dx =
//!   K^(p+1) / (-(p+1))`.
//! * exponential `l^k`, `|l| < 1`: `|l^(k+1)/(k+1) - l^k/k| <= (3/2) q^k`,
//!   `|l^(k+1) - l^k| <= |1-l| q^k`, `|l^k| = q^k`; all tails are geometric
//!   sums `<= c q^(K+1) / (1-q)`.
//! * exponential `l = 1` (constant): weighted-norm terms are
//!   `|c|/(k(k+1))`, telescoping to the exact tail `|c|/(K+1)`.
//! * eigenvector family `y_k = l^(k-1) w^(-k(k-1)/2)`: the coordinate ratio
//!   is `|y_(k+1)/y_k| = |l|/|w|^k <= 1/2` for `k >= k0(l, w)`, so beyond
//!   `max(K, k0)` all three norm series are dominated by `3 |y_(K+1)|`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::bracket::{modulus, modulus_upper, rat_pow_bounds, Bounds, DEFAULT_PREC_BITS};
use crate::error::Error;
use crate::norms::Space;
use crate::scalar::{rat_int, rat_recip, Rat, Scalar};
use crate::seq::FiniteSeq;

/// Coordinate of a lazy family: exact scalar, or a certified real enclosure
/// when the value is irrational (non-perfect powers `k^p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordValue {
    Exact(Scalar),
    Approx(Bounds),
}

impl CoordValue {
    /// The exact scalar, if this coordinate has one.
    pub fn exact(&self) -> Option<&Scalar> {
        match self {
            CoordValue::Exact(s) => Some(s),
            CoordValue::Approx(_) => None,
        }
    }
}

type CoordRule = Arc<dyn Fn(u64) -> CoordValue + Send + Sync>;
type TailRule = Arc<dyn Fn(Space, u64) -> Rat + Send + Sync>;

/// A sequence given by a coordinate rule rather than stored coordinates.
#[derive(Clone)]
pub enum LazySeq {
    /// `(k^p)` for a rational exponent `p`.
    Power { p: Rat },
    /// `(lambda^k)`.
    Exponential { lambda: Scalar },
    /// Eigenvector family of the unbounded shift: `y_k = lambda^(k-1) *
    /// w^(-k(k-1)/2)`, normalized to `y_1 = 1` (`0^0 := 1` so `lambda = 0`
    /// gives `e_1`). Requires `|w| > 1`.
    EigvecUnbounded { lambda: Scalar, w: Scalar },
    /// The constant sequence `(c, c, c, ...)`.
    Constant { c: Scalar },
    /// A scalar multiple of another family.
    Scaled { scale: Scalar, inner: Box<LazySeq> },
    /// User-supplied coordinate rule with an optional certified tail rule.
    Custom {
        label: String,
        coord: CoordRule,
        tail: Option<TailRule>,
    },
}

impl LazySeq {
    pub fn power(p: Rat) -> Self {
        LazySeq::Power { p }
    }

    pub fn exponential(lambda: Scalar) -> Self {
        LazySeq::Exponential { lambda }
    }

    pub fn constant(c: Scalar) -> Self {
        LazySeq::Constant { c }
    }

    pub fn eigvec_unbounded(lambda: Scalar, w: Scalar) -> Result<Self, Error> {
        if w.abs_cmp(&Rat::one()) != std::cmp::Ordering::Greater {
            return Err(Error::UnboundedVariantWeight);
        }
        Ok(LazySeq::EigvecUnbounded { lambda, w })
    }

    pub fn scaled(scale: Scalar, inner: LazySeq) -> Self {
        LazySeq::Scaled {
            scale,
            inner: Box::new(inner),
        }
    }

    /// Short human-readable family description.
    pub fn describe(&self) -> String {
        match self {
            LazySeq::Power { p } => format!("power(p={p})"),
            LazySeq::Exponential { lambda } => format!("exponential(lambda={lambda})"),
            LazySeq::EigvecUnbounded { lambda, w } => {
                format!("eigvec-unbounded(lambda={lambda}, w={w})")
            }
            LazySeq::Constant { c } => format!("constant(c={c})"),
            LazySeq::Scaled { scale, inner } => format!("{scale} * {}", inner.describe()),
            LazySeq::Custom { label, .. } => format!("custom({label})"),
        }
    }

    /// Coordinate at index `k >= 1`, exact where the family parameters allow.
    pub fn coord(&self, k: u64) -> CoordValue {
        self.coord_prec(k, DEFAULT_PREC_BITS)
    }

    pub fn coord_prec(&self, k: u64, prec_bits: u32) -> CoordValue {
        assert!(k >= 1, "indices are 1-based");
        match self {
            LazySeq::Power { p } => {
                let base = rat_int(k as i64);
                match rat_pow_bounds(&base, p, prec_bits) {
                    Bounds::Exact(v) => CoordValue::Exact(Scalar::Rational(v)),
                    b => CoordValue::Approx(b),
                }
            }
            LazySeq::Exponential { lambda } => {
                CoordValue::Exact(lambda.pow(k as i64).expect("positive exponent"))
            }
            LazySeq::EigvecUnbounded { lambda, w } => {
                CoordValue::Exact(eigvec_coord(lambda, w, k))
            }
            LazySeq::Constant { c } => CoordValue::Exact(c.clone()),
            LazySeq::Scaled { scale, inner } => match inner.coord_prec(k, prec_bits) {
                CoordValue::Exact(v) => CoordValue::Exact(scale * &v),
                CoordValue::Approx(b) => {
                    let s = scale
                        .as_rational()
                        .expect("scaled enclosure requires a rational scale");
                    CoordValue::Approx(b.scale(s))
                }
            },
            LazySeq::Custom { coord, .. } => coord(k),
        }
    }

    /// Certified upper bound on the tail of the `space` norm series beyond
    /// index `K`: the sum of the norm's terms for `k > K` never exceeds the
    /// returned rational. Errors when the family is not a member of the
    /// space (or membership is undecidable).
    pub fn tail_bound(&self, space: Space, k: u64) -> Result<Rat, Error> {
        self.tail_bound_prec(space, k, DEFAULT_PREC_BITS)
    }

    pub fn tail_bound_prec(&self, space: Space, k: u64, prec_bits: u32) -> Result<Rat, Error> {
        match self {
            LazySeq::Power { p } => power_tail(p, space, k, prec_bits),
            LazySeq::Exponential { lambda } => exponential_tail(lambda, space, k, prec_bits),
            LazySeq::Constant { c } => constant_tail(c, space, k, prec_bits),
            LazySeq::EigvecUnbounded { lambda, w } => {
                eigvec_tail(lambda, w, space, k, prec_bits)
            }
            LazySeq::Scaled { scale, inner } => {
                if scale.is_zero() {
                    return Ok(Rat::zero());
                }
                let inner_tail = inner.tail_bound_prec(space, k, prec_bits)?;
                Ok(modulus_upper(scale, prec_bits) * inner_tail)
            }
            LazySeq::Custom { tail, label, .. } => match tail {
                Some(rule) => Ok(rule(space, k)),
                None => Err(Error::Undecidable(format!(
                    "custom family {label} has no tail rule"
                ))),
            },
        }
    }
}

impl fmt::Debug for LazySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// `y_k = lambda^(k-1) * w^(-k(k-1)/2)` with `0^0 := 1`.
pub(crate) fn eigvec_coord(lambda: &Scalar, w: &Scalar, k: u64) -> Scalar {
    let k_i = i64::try_from(k).expect("index exceeds i64");
    let quad = k_i
        .checked_mul(k_i - 1)
        .map(|v| v / 2)
        .expect("quadratic exponent exceeds i64");
    let lam_pow = lambda.pow(k_i - 1).expect("nonnegative exponent");
    if lam_pow.is_zero() {
        return Scalar::zero();
    }
    let w_pow = w.pow(-quad).expect("|w| > 1 is nonzero");
    &lam_pow * &w_pow
}

/// Smallest `k0 >= 1` with `|lambda| / |w|^k <= 1/2` for all `k >= k0`,
/// decided by the rational comparison `4 |lambda|^2 <= |w|^(2k)`.
pub(crate) fn eigvec_ratio_threshold(lambda: &Scalar, w: &Scalar) -> u64 {
    let target = lambda.abs_sq() * rat_int(4);
    let w_sq = w.abs_sq();
    let mut pow = w_sq.clone();
    let mut k = 1u64;
    while pow < target {
        pow *= &w_sq;
        k += 1;
    }
    k
}

fn power_tail(p: &Rat, space: Space, k: u64, prec_bits: u32) -> Result<Rat, Error> {
    let one = Rat::one();
    let kp1 = rat_int(k as i64 + 1);
    match space {
        Space::X => {
            if p >= &one {
                return Err(not_member(space, "power requires p < 1"));
            }
            // tail is exactly (K+1)^(p-1); report its certified upper end
            let exp = p - &one;
            Ok(rat_pow_bounds(&kp1, &exp, prec_bits).hi().clone())
        }
        Space::Bv0 => {
            if !p.is_negative() {
                return Err(not_member(space, "power requires p < 0"));
            }
            Ok(rat_pow_bounds(&kp1, p, prec_bits).hi().clone())
        }
        Space::L1 => {
            if p >= &rat_int(-1) {
                return Err(not_member(space, "power requires p < -1"));
            }
            // integral comparison: sum_{j>K} j^p <= K^(p+1) / (-(p+1))
            let exp = p + &one;
            let kk = rat_int(k as i64);
            let scale = -(exp.clone());
            Ok(rat_pow_bounds(&kk, &exp, prec_bits).hi() / scale)
        }
    }
}

fn exponential_tail(lambda: &Scalar, space: Space, k: u64, prec_bits: u32) -> Result<Rat, Error> {
    if lambda.is_one() {
        return constant_tail(&Scalar::one(), space, k, prec_bits);
    }
    if lambda.abs_cmp(&Rat::one()) != std::cmp::Ordering::Less {
        return Err(not_member(space, "exponential requires |lambda| < 1 or lambda = 1"));
    }
    // q < 1 is a rational upper bound on |lambda|; tighten the enclosure
    // until it separates from 1 (always possible since |lambda| < 1).
    let mut prec = prec_bits;
    let q = loop {
        let q = modulus_upper(lambda, prec);
        if q < Rat::one() {
            break q;
        }
        prec *= 2;
    };
    let geometric = crate::bracket::pow_rat(&q, k as i64 + 1) / (Rat::one() - &q);
    let factor = match space {
        Space::X => rat_int(3) / rat_int(2),
        Space::Bv0 => modulus_upper(&(&Scalar::one() - lambda), prec_bits),
        Space::L1 => Rat::one(),
    };
    Ok(factor * geometric)
}

fn constant_tail(c: &Scalar, space: Space, k: u64, prec_bits: u32) -> Result<Rat, Error> {
    if c.is_zero() {
        return Ok(Rat::zero());
    }
    match space {
        Space::X => Ok(modulus_upper(c, prec_bits) * rat_recip(k + 1)),
        Space::Bv0 | Space::L1 => Err(not_member(
            space,
            "nonzero constant sequences do not vanish",
        )),
    }
}

fn eigvec_tail(
    lambda: &Scalar,
    w: &Scalar,
    space: Space,
    k: u64,
    prec_bits: u32,
) -> Result<Rat, Error> {
    let _ = space; // member of all three spaces; the dominating bound is shared
    let k0 = eigvec_ratio_threshold(lambda, w);
    // Sum the certain terms up to k0 explicitly, then the geometric bound:
    // for k >= k0 the coordinate at least halves at each step, so each
    // norm's terms are dominated by (3/2)|y_k| and the tail beyond `start`
    // by 3 |y_(start+1)|.
    let start = k.max(k0);
    let mut head = Rat::zero();
    for j in (k + 1)..=start {
        let yj = modulus(&eigvec_coord(lambda, w, j), prec_bits);
        let yj1 = modulus(&eigvec_coord(lambda, w, j + 1), prec_bits);
        head += term_upper(space, j, &yj, &yj1);
    }
    let y_next = modulus_upper(&eigvec_coord(lambda, w, start + 1), prec_bits);
    Ok(head + rat_int(3) * y_next)
}

/// Upper bound on the `space` norm term at index `j` from coordinate moduli.
fn term_upper(space: Space, j: u64, yj: &Bounds, yj1: &Bounds) -> Rat {
    match space {
        Space::X => yj1.hi() * rat_recip(j + 1) + yj.hi() * rat_recip(j),
        Space::Bv0 => yj1.hi() + yj.hi(),
        Space::L1 => yj.hi().clone(),
    }
}

fn not_member(space: Space, reason: &str) -> Error {
    Error::NotAMember {
        space,
        reason: reason.to_string(),
    }
}

/// Materializes the first `n` coordinates as a `FiniteSeq`; panics if any
/// coordinate in the prefix is not exact.
pub fn prefix(seq: &LazySeq, n: u64) -> FiniteSeq {
    FiniteSeq::from_pairs((1..=n).map(|k| {
        let v = seq
            .coord(k)
            .exact()
            .expect("prefix requires exact coordinates")
            .clone();
        (k, v)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn kronecker_and_power_coords() {
        // (e3)_3 = 1 via the finite representation
        assert_eq!(FiniteSeq::basis(3).get(3), Scalar::one());
        // power(1/2) at k = 4 is exactly 2
        let s = LazySeq::power(rat(1, 2));
        assert_eq!(s.coord(4), CoordValue::Exact(Scalar::from_int(2)));
        // and at k = 2 an enclosure of sqrt(2)
        match s.coord(2) {
            CoordValue::Approx(b) => {
                assert!(b.lo() * b.lo() <= rat_int(2) && rat_int(2) <= b.hi() * b.hi());
            }
            other => panic!("expected enclosure, got {other:?}"),
        }
    }

    #[test]
    fn eigvec_coord_and_recurrence() {
        // y_3 = 1 * 2^-3 = 1/8 for lambda = 1, w = 2
        let lambda = Scalar::one();
        let w = Scalar::from_int(2);
        assert_eq!(eigvec_coord(&lambda, &w, 3), Scalar::from_ratio(1, 8));
        // cross-check w^2 y_3 = lambda y_2
        let lhs = &w.pow(2).unwrap() * &eigvec_coord(&lambda, &w, 3);
        let rhs = &lambda * &eigvec_coord(&lambda, &w, 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eigvec_zero_lambda_is_basis_vector() {
        let s = LazySeq::eigvec_unbounded(Scalar::zero(), Scalar::from_int(2)).unwrap();
        assert_eq!(s.coord(1), CoordValue::Exact(Scalar::one()));
        assert_eq!(s.coord(2), CoordValue::Exact(Scalar::zero()));
        assert_eq!(s.coord(7), CoordValue::Exact(Scalar::zero()));
    }

    #[test]
    fn eigvec_rejects_contracting_weight() {
        assert!(LazySeq::eigvec_unbounded(Scalar::one(), Scalar::one()).is_err());
        assert!(
            LazySeq::eigvec_unbounded(Scalar::one(), Scalar::from_ratio(1, 2)).is_err()
        );
    }

    #[test]
    fn constant_tail_is_telescoped_exactly() {
        let s = LazySeq::constant(Scalar::from_int(3));
        assert_eq!(s.tail_bound(Space::X, 5).unwrap(), rat(3, 6));
        assert!(s.tail_bound(Space::L1, 5).is_err());
    }

    #[test]
    fn power_tail_value() {
        // p = 0: tail beyond K is exactly (K+1)^-1
        let s = LazySeq::power(Rat::zero());
        assert_eq!(s.tail_bound(Space::X, 9).unwrap(), rat(1, 10));
        // p = 1 is not a member
        assert!(s.tail_bound(Space::L1, 9).is_err());
        assert!(LazySeq::power(Rat::one()).tail_bound(Space::X, 3).is_err());
    }

    #[test]
    fn ratio_threshold() {
        // |3| / 2^k <= 1/2 from k = 3 on (4*9 = 36 <= 4^3 = 64)
        assert_eq!(
            eigvec_ratio_threshold(&Scalar::from_int(3), &Scalar::from_int(2)),
            3
        );
        assert_eq!(
            eigvec_ratio_threshold(&Scalar::zero(), &Scalar::from_int(2)),
            1
        );
    }
}
