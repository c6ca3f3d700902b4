//! The isometric isomorphisms between the weighted space, bv0, and l1.
//!
//! Forward maps:
//!   J1 x = (x_k / k)            weighted space -> bv0
//!   J2 y = (y_{k+1} - y_k)      bv0 -> l1
//!   J  = J2 J1                  weighted space -> l1
//! Inverses, with `z_0 := -sum_{k>=1} z_k` computed as an exact finite sum:
//!   J1inv y = (k y_k)
//!   J2inv z = (sum_{j=0}^{k-1} z_j) = (-sum_{j>=k} z_j)
//!   Jinv z  = (k sum_{j=0}^{k-1} z_j)
//!
//! All maps are exact on c00 and carry c00 onto c00, so no space tag is
//! needed on inputs. The inverse maps materialize a dense prefix (suffix
//! sums are constant between support points), so their output size is the
//! input's support_max.

use std::fmt;

use crate::certificate::Certificate;
use crate::error::Error;
use crate::norms::{norm_finite, Space};
use crate::scalar::{rat_int, rat_recip, Scalar};
use crate::seq::FiniteSeq;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsoMap {
    J1,
    J2,
    J,
    J1Inv,
    J2Inv,
    JInv,
}

impl IsoMap {
    pub const ALL: [IsoMap; 6] = [
        IsoMap::J1,
        IsoMap::J2,
        IsoMap::J,
        IsoMap::J1Inv,
        IsoMap::J2Inv,
        IsoMap::JInv,
    ];

    pub fn parse(s: &str) -> Result<IsoMap, Error> {
        match s.to_ascii_lowercase().as_str() {
            "j1" => Ok(IsoMap::J1),
            "j2" => Ok(IsoMap::J2),
            "j" => Ok(IsoMap::J),
            "j1inv" | "j1^-1" => Ok(IsoMap::J1Inv),
            "j2inv" | "j2^-1" => Ok(IsoMap::J2Inv),
            "jinv" | "j^-1" => Ok(IsoMap::JInv),
            other => Err(Error::Parse(format!("unknown isomorphism {other:?}"))),
        }
    }

    pub fn inverse(self) -> IsoMap {
        match self {
            IsoMap::J1 => IsoMap::J1Inv,
            IsoMap::J2 => IsoMap::J2Inv,
            IsoMap::J => IsoMap::JInv,
            IsoMap::J1Inv => IsoMap::J1,
            IsoMap::J2Inv => IsoMap::J2,
            IsoMap::JInv => IsoMap::J,
        }
    }

    /// Space the map is an isometry from.
    pub fn source(self) -> Space {
        match self {
            IsoMap::J1 | IsoMap::J => Space::X,
            IsoMap::J2 | IsoMap::J1Inv => Space::Bv0,
            IsoMap::J2Inv | IsoMap::JInv => Space::L1,
        }
    }

    /// Space the map is an isometry onto.
    pub fn target(self) -> Space {
        self.inverse().source()
    }
}

impl fmt::Display for IsoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsoMap::J1 => "J1",
            IsoMap::J2 => "J2",
            IsoMap::J => "J",
            IsoMap::J1Inv => "J1inv",
            IsoMap::J2Inv => "J2inv",
            IsoMap::JInv => "Jinv",
        };
        write!(f, "{s}")
    }
}

/// Applies the map exactly on a finitely supported sequence.
pub fn apply_iso(map: IsoMap, x: &FiniteSeq) -> FiniteSeq {
    match map {
        IsoMap::J1 => x.map_coords(|k, v| v * &Scalar::Rational(rat_recip(k))),
        IsoMap::J1Inv => x.map_coords(|k, v| v * &Scalar::from_rat(rat_int(k as i64))),
        IsoMap::J2 => difference_map(x, |_k, v| v.clone()),
        IsoMap::J => difference_map(x, |k, v| v * &Scalar::Rational(rat_recip(k))),
        IsoMap::J2Inv => suffix_sum_map(x, |_k, s| -&s),
        IsoMap::JInv => suffix_sum_map(x, |k, s| {
            &Scalar::from_rat(rat_int(k as i64)) * &(-&s)
        }),
    }
}

/// `(f(k+1, x_{k+1}) - f(k, x_k))_k`, evaluated sparsely.
fn difference_map<F>(x: &FiniteSeq, f: F) -> FiniteSeq
where
    F: Fn(u64, &Scalar) -> Scalar,
{
    FiniteSeq::from_pairs(x.difference_support().into_iter().map(|k| {
        let a = f(k + 1, &x.get(k + 1));
        let b = f(k, &x.get(k));
        (k, &a - &b)
    }))
}

/// `(g(k, sum_{j >= k} z_j))_k` over the dense prefix `k <= support_max`.
fn suffix_sum_map<G>(z: &FiniteSeq, g: G) -> FiniteSeq
where
    G: Fn(u64, Scalar) -> Scalar,
{
    let m = z.support_max();
    let mut suffix = Scalar::zero();
    let mut pairs = Vec::with_capacity(m as usize);
    for k in (1..=m).rev() {
        suffix = &suffix + &z.get(k);
        pairs.push((k, g(k, suffix.clone())));
    }
    FiniteSeq::from_pairs(pairs)
}

/// Checks `||map(x)||_target = ||x||_source` and reports a certificate.
/// Exact (residual 0) for rational sequences; complex coordinates with
/// irrational moduli are certified at bracket precision.
pub fn verify_isometry(map: IsoMap, x: &FiniteSeq) -> Certificate {
    let source = norm_finite(x, map.source());
    let image = apply_iso(map, x);
    let target = norm_finite(&image, map.target());
    Certificate::from_bounds(
        format!(
            "||{map} x||_{} = ||x||_{}",
            map.target(),
            map.source()
        ),
        &target.value,
        &source.value,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::Bounds;
    use crate::scalar::{rat, Rat};
    use num_traits::{One, Zero};

    fn seq(vals: &[i64]) -> FiniteSeq {
        FiniteSeq::from_dense(&vals.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn j_on_first_basis_vector() {
        // J e1 = (0/2 - 1/1, 0, ...) = (-1, 0, ...)
        let z = apply_iso(IsoMap::J, &FiniteSeq::basis(1));
        assert_eq!(z, FiniteSeq::from_pairs([(1, Scalar::from_int(-1))]));
    }

    #[test]
    fn jinv_on_basis_vectors() {
        // Jinv e_n = (-1, -2, ..., -n, 0, ...)
        for n in 1..=6u64 {
            let x = apply_iso(IsoMap::JInv, &FiniteSeq::basis(n));
            let expected = FiniteSeq::from_pairs(
                (1..=n).map(|k| (k, Scalar::from_int(-(k as i64)))),
            );
            assert_eq!(x, expected, "n = {n}");
        }
    }

    #[test]
    fn j1_divides_by_index() {
        let x = seq(&[1, 2, 3]);
        let y = apply_iso(IsoMap::J1, &x);
        assert_eq!(
            y,
            FiniteSeq::from_pairs([
                (1, Scalar::one()),
                (2, Scalar::one()),
                (3, Scalar::one())
            ])
        );
    }

    #[test]
    fn j2_on_first_basis_vector() {
        let z = apply_iso(IsoMap::J2, &FiniteSeq::basis(1));
        assert_eq!(z, FiniteSeq::from_pairs([(1, Scalar::from_int(-1))]));
        let c = verify_isometry(IsoMap::J2, &FiniteSeq::basis(1));
        assert!(c.passed, "{c}");
    }

    #[test]
    fn round_trips_both_orders() {
        let x = FiniteSeq::from_pairs([
            (1, Scalar::from_ratio(3, 7)),
            (2, Scalar::from_int(-2)),
            (5, Scalar::from_ratio(1, 3)),
            (9, Scalar::from_int(11)),
        ]);
        for map in [IsoMap::J1, IsoMap::J2, IsoMap::J] {
            let there = apply_iso(map, &x);
            assert_eq!(apply_iso(map.inverse(), &there), x, "{map} then inverse");
            let back = apply_iso(map.inverse(), &x);
            assert_eq!(apply_iso(map, &back), x, "inverse of {map} then forward");
        }
    }

    #[test]
    fn composition_j_equals_j2_after_j1() {
        let x = seq(&[5, -3, 0, 7, 1]);
        let composed = apply_iso(IsoMap::J2, &apply_iso(IsoMap::J1, &x));
        assert_eq!(apply_iso(IsoMap::J, &x), composed);
    }

    #[test]
    fn isometry_on_norm_witnesses() {
        // ||J x^(n)||_1 = 1 = ||x^(n)||
        let x = FiniteSeq::from_pairs((1..=8u64).map(|k| (k, Scalar::from_int(k as i64))));
        let c = verify_isometry(IsoMap::J, &x);
        assert!(c.passed && c.residual == Bounds::Exact(Rat::zero()), "{c}");
        let image = apply_iso(IsoMap::J, &x);
        assert_eq!(norm_finite(&image, Space::L1).value, Bounds::Exact(Rat::one()));

        // ||J1 e_m||_0 = 2/m = ||e_m||
        for m in 2..=9u64 {
            let c = verify_isometry(IsoMap::J1, &FiniteSeq::basis(m));
            assert!(c.passed, "m = {m}: {c}");
            let image = apply_iso(IsoMap::J1, &FiniteSeq::basis(m));
            assert_eq!(
                norm_finite(&image, Space::Bv0).value,
                Bounds::Exact(rat(2, m as i64))
            );
        }
    }

    #[test]
    fn linearity() {
        let x = seq(&[1, 0, -4, 2]);
        let y = FiniteSeq::from_pairs([(2, Scalar::from_ratio(1, 2)), (7, Scalar::from_int(3))]);
        let a = Scalar::from_ratio(-2, 5);
        let b = Scalar::from_int(3);
        for map in IsoMap::ALL {
            let lhs = apply_iso(map, &x.scale(&a).add(&y.scale(&b)));
            let rhs = apply_iso(map, &x).scale(&a).add(&apply_iso(map, &y).scale(&b));
            assert_eq!(lhs, rhs, "{map}");
        }
    }
}
