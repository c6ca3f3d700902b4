//! The four operators conjugated across the isometry `J` between the
//! weighted space and l1, in closed form, plus verification against the
//! explicit composition through the isomorphisms.
//!
//! With `W(k, n) = prod_{m=k}^{k+n-1} w^m = w^(kn + n(n-1)/2)` and
//! `S_m = sum_{j=0}^m z_j` where `z_0 := -sum_{k>=1} z_k`:
//!
//! * weighted space, bounded (`Jinv A_w^n J`, Rolewicz shift upstairs):
//!   `(w^n k/(k+n) x_{k+n})_k`
//! * weighted space, unbounded:
//!   `(k sum_{j>=k} W(j, n) (x_{j+n}/(j+n) - x_{j+1+n}/(j+1+n)))_k`
//! * l1, bounded (`J A_w^n Jinv`, weighted-space shift downstairs):
//!   `(w^n ((k+1+n)/(k+1) z_{k+n} - n/(k(k+1)) S_{k-1+n}))_k`
//! * l1, unbounded:
//!   `(W(k, n) (w^n (k+1+n)/(k+1) S_{k+n} - (k+n)/k S_{k-1+n}))_k`
//!
//! On finite support every infinite sum terminates: `S_m = -sum_{j>m} z_j`
//! vanishes once `m` reaches the support end, and the suffix sums in the
//! unbounded form run out of nonzero terms. `z_0` is computed once per
//! call as an exact finite sum and never stored as a coordinate. Prefix
//! and suffix sums are accumulated in one pass, so an application is
//! linear in the support length (times the cost of the weight powers).

use std::cmp::Ordering;

use num_traits::One;

use crate::certificate::Certificate;
use crate::error::Error;
use crate::iso::{apply_iso, IsoMap};
use crate::norms::{norm_finite, Space};
use crate::scalar::{rat, rat_int, Rat, Scalar};
use crate::seq::FiniteSeq;
use crate::shifts::{apply_bounded, apply_unbounded};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjugateWhich {
    XBounded,
    XUnbounded,
    L1Bounded,
    L1Unbounded,
}

impl ConjugateWhich {
    pub const ALL: [ConjugateWhich; 4] = [
        ConjugateWhich::XBounded,
        ConjugateWhich::XUnbounded,
        ConjugateWhich::L1Bounded,
        ConjugateWhich::L1Unbounded,
    ];

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "x-bounded" => Ok(ConjugateWhich::XBounded),
            "x-unbounded" => Ok(ConjugateWhich::XUnbounded),
            "l1-bounded" => Ok(ConjugateWhich::L1Bounded),
            "l1-unbounded" => Ok(ConjugateWhich::L1Unbounded),
            other => Err(Error::Parse(format!("unknown conjugate {other:?}"))),
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, ConjugateWhich::XUnbounded | ConjugateWhich::L1Unbounded)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConjugateWhich::XBounded => "x-bounded",
            ConjugateWhich::XUnbounded => "x-unbounded",
            ConjugateWhich::L1Bounded => "l1-bounded",
            ConjugateWhich::L1Unbounded => "l1-unbounded",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjugateOp {
    pub which: ConjugateWhich,
    pub w: Scalar,
    pub n: u64,
}

impl ConjugateOp {
    pub fn new(which: ConjugateWhich, w: Scalar, n: u64) -> Result<Self, Error> {
        if which.is_unbounded() && w.abs_cmp(&Rat::one()) != Ordering::Greater {
            return Err(Error::UnboundedVariantWeight);
        }
        Ok(ConjugateOp { which, w, n })
    }
}

/// Applies the closed-form conjugate exactly on a finitely supported
/// sequence.
pub fn apply_conjugate(op: &ConjugateOp, x: &FiniteSeq) -> Result<FiniteSeq, Error> {
    let (w, n) = (&op.w, op.n);
    Ok(match op.which {
        ConjugateWhich::XBounded => {
            // w^n (k/(k+n)) x_{k+n}
            let wn = w.pow(n as i64).expect("nonnegative exponent");
            x.shift_left(n, &Scalar::one()).map_coords(|k, v| {
                &(&wn * v) * &Scalar::Rational(rat(k as i64, (k + n) as i64))
            })
        }
        ConjugateWhich::XUnbounded => x_unbounded(w, n, x),
        ConjugateWhich::L1Bounded => l1_conjugate(w, n, x, false),
        ConjugateWhich::L1Unbounded => l1_conjugate(w, n, x, true),
    })
}

/// `y_k = k sum_{j=k}^{M-n} W(j, n) (x_{j+n}/(j+n) - x_{j+1+n}/(j+1+n))`,
/// accumulated as one suffix-sum pass from the support end down.
fn x_unbounded(w: &Scalar, n: u64, x: &FiniteSeq) -> FiniteSeq {
    let m = x.support_max();
    if m <= n && n > 0 {
        return FiniteSeq::zero();
    }
    let upper = m - n; // = m for n = 0
    if upper == 0 {
        return FiniteSeq::zero();
    }
    // W(j, n) walked down incrementally: W(j-1, n) = W(j, n) w^-n
    let w_n_inv = w
        .pow(-(n as i64))
        .expect("|w| > 1 weights are invertible");
    let mut weight = w
        .pow(crate::shifts::forward_exponent(upper, n))
        .expect("nonzero w");
    let mut suffix = Scalar::zero();
    let mut pairs = Vec::with_capacity(upper as usize);
    for j in (1..=upper).rev() {
        let a = &x.get(j + n) * &Scalar::Rational(rat_recip_u(j + n));
        let b = &x.get(j + n + 1) * &Scalar::Rational(rat_recip_u(j + n + 1));
        suffix = &suffix + &(&weight * &(&a - &b));
        pairs.push((j, &Scalar::from_rat(rat_int(j as i64)) * &suffix));
        weight = &weight * &w_n_inv;
    }
    FiniteSeq::from_pairs(pairs)
}

/// Shared single-pass driver for both l1 closed forms. `S_m` is carried
/// left to right; `z_0 = -sum z_k` seeds it.
fn l1_conjugate(w: &Scalar, n: u64, z: &FiniteSeq, unbounded: bool) -> FiniteSeq {
    let m = z.support_max();
    let upper = if n == 0 { m } else { m.saturating_sub(n) };
    if upper == 0 {
        return FiniteSeq::zero();
    }
    // prefix sums S_0..S_m with S_0 = z_0 = -(z_1 + ... + z_M)
    let mut prefix = Vec::with_capacity(m as usize + 1);
    let mut acc = Scalar::zero();
    for k in 1..=m {
        acc = &acc + &z.get(k);
    }
    prefix.push(-&acc); // S_0
    let mut running = prefix[0].clone();
    for k in 1..=m {
        running = &running + &z.get(k);
        prefix.push(running.clone());
    }
    let s = |idx: u64| -> Scalar {
        if idx as usize >= prefix.len() {
            Scalar::zero() // S_m = 0 beyond the support
        } else {
            prefix[idx as usize].clone()
        }
    };

    let wn = w.pow(n as i64).expect("nonnegative exponent");
    // W(k, n) walked up incrementally: W(k+1, n) = W(k, n) w^n
    let mut front = w
        .pow(crate::shifts::forward_exponent(1, n))
        .expect("nonzero w");
    let mut pairs = Vec::with_capacity(upper as usize);
    for k in 1..=upper {
        let value = if unbounded {
            // W(k,n) (w^n (k+1+n)/(k+1) S_{k+n} - (k+n)/k S_{k-1+n})
            let lhs = &(&wn * &s(k + n)) * &Scalar::Rational(rat((k + 1 + n) as i64, (k + 1) as i64));
            let rhs = &s(k - 1 + n) * &Scalar::Rational(rat((k + n) as i64, k as i64));
            let value = &front * &(&lhs - &rhs);
            front = &front * &wn;
            value
        } else {
            // w^n ((k+1+n)/(k+1) z_{k+n} - n/(k(k+1)) S_{k-1+n})
            let lhs = &z.get(k + n) * &Scalar::Rational(rat((k + 1 + n) as i64, (k + 1) as i64));
            let rhs = &s(k - 1 + n)
                * &Scalar::Rational(rat(n as i64, (k * (k + 1)) as i64));
            &wn * &(&lhs - &rhs)
        };
        pairs.push((k, value));
    }
    FiniteSeq::from_pairs(pairs)
}

fn rat_recip_u(k: u64) -> Rat {
    crate::scalar::rat_recip(k)
}

/// The same operator built the long way through the isomorphisms: the
/// independent oracle for [`apply_conjugate`].
pub fn apply_composed(op: &ConjugateOp, x: &FiniteSeq) -> Result<FiniteSeq, Error> {
    let (w, n) = (&op.w, op.n);
    Ok(match op.which {
        ConjugateWhich::XBounded => {
            let z = apply_iso(IsoMap::J, x);
            apply_iso(IsoMap::JInv, &apply_bounded(w, n, &z))
        }
        ConjugateWhich::XUnbounded => {
            let z = apply_iso(IsoMap::J, x);
            apply_iso(IsoMap::JInv, &apply_unbounded(w, n, &z)?)
        }
        ConjugateWhich::L1Bounded => {
            let y = apply_iso(IsoMap::JInv, x);
            apply_iso(IsoMap::J, &apply_bounded(w, n, &y))
        }
        ConjugateWhich::L1Unbounded => {
            let y = apply_iso(IsoMap::JInv, x);
            apply_iso(IsoMap::J, &apply_unbounded(w, n, &y)?)
        }
    })
}

/// Checks that the closed form agrees with the composition coordinatewise;
/// the residual is the summing norm of the difference, which must be
/// exactly zero.
pub fn verify_conjugacy(op: &ConjugateOp, x: &FiniteSeq) -> Result<Certificate, Error> {
    let closed = apply_conjugate(op, x)?;
    let composed = apply_composed(op, x)?;
    let diff = closed.sub(&composed);
    let residual = norm_finite(&diff, Space::L1).value;
    Ok(Certificate::from_bounds(
        format!(
            "{} closed form = conjugation through J, w = {}, n = {}",
            op.which.name(),
            op.w,
            op.n
        ),
        &residual,
        &crate::bracket::Bounds::zero(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::Bounds;

    fn op(which: ConjugateWhich, w: i64, n: u64) -> ConjugateOp {
        ConjugateOp::new(which, Scalar::from_int(w), n).unwrap()
    }

    #[test]
    fn x_bounded_on_basis() {
        // k/(k+1) at k = 1 with w = 2: e2 -> e1
        let y = apply_conjugate(&op(ConjugateWhich::XBounded, 2, 1), &FiniteSeq::basis(2)).unwrap();
        assert_eq!(y, FiniteSeq::basis(1));
    }

    #[test]
    fn identity_power() {
        let x = FiniteSeq::from_pairs([
            (1, Scalar::from_ratio(5, 3)),
            (4, Scalar::from_int(-2)),
            (9, Scalar::from_ratio(1, 7)),
        ]);
        for which in ConjugateWhich::ALL {
            let y = apply_conjugate(&op(which, 2, 0), &x).unwrap();
            assert_eq!(y, x, "{which:?}");
        }
    }

    #[test]
    fn closed_forms_match_composition() {
        let samples = [
            FiniteSeq::basis(1),
            FiniteSeq::basis(4),
            FiniteSeq::from_pairs([
                (1, Scalar::from_ratio(1, 2)),
                (2, Scalar::from_int(3)),
                (5, Scalar::from_ratio(-2, 7)),
                (6, Scalar::from_int(1)),
            ]),
        ];
        for which in ConjugateWhich::ALL {
            for w in [2i64, 3] {
                for n in 0..=5u64 {
                    for x in &samples {
                        let c = verify_conjugacy(&op(which, w, n), x).unwrap();
                        assert!(
                            c.passed && c.residual == Bounds::zero(),
                            "{which:?} w={w} n={n}: {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn power_law_single_steps_compose() {
        let x = FiniteSeq::from_pairs([
            (2, Scalar::from_int(5)),
            (3, Scalar::from_ratio(1, 3)),
            (7, Scalar::from_int(-1)),
        ]);
        for which in ConjugateWhich::ALL {
            let single = op(which, 2, 1);
            let twice = apply_conjugate(&single, &apply_conjugate(&single, &x).unwrap()).unwrap();
            let squared = apply_conjugate(&op(which, 2, 2), &x).unwrap();
            assert_eq!(twice, squared, "{which:?}");
        }
    }

    #[test]
    fn unbounded_variants_reject_small_weights() {
        for which in [ConjugateWhich::XUnbounded, ConjugateWhich::L1Unbounded] {
            assert!(ConjugateOp::new(which, Scalar::one(), 1).is_err());
            assert!(ConjugateOp::new(which, Scalar::from_ratio(1, 2), 1).is_err());
        }
        // bounded variants accept any weight, including 0
        assert!(ConjugateOp::new(ConjugateWhich::XBounded, Scalar::zero(), 2).is_ok());
    }

    #[test]
    fn isometry_transports_orbit_norms() {
        // ||Ahat_w^n (J x)||_1 = ||A_w^n x|| exactly for the l1-bounded
        // conjugate of the weighted-space shift
        let x = FiniteSeq::from_pairs([
            (1, Scalar::from_int(2)),
            (3, Scalar::from_ratio(-1, 4)),
            (4, Scalar::from_int(1)),
        ]);
        let w = Scalar::from_int(-1); // |w| = 1
        for n in 0..=6u64 {
            let z = apply_iso(IsoMap::J, &x);
            let conj = ConjugateOp::new(ConjugateWhich::L1Bounded, w.clone(), n).unwrap();
            let lhs = norm_finite(&apply_conjugate(&conj, &z).unwrap(), Space::L1).value;
            let rhs = norm_finite(&apply_bounded(&w, n, &x), Space::X).value;
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
