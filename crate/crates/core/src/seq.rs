//! Finitely supported sequences, the exact-arithmetic core.
//!
//! A `FiniteSeq` stores only nonzero coordinates (1-based indices) in a
//! sorted map, so equality is canonical and support can sit at arbitrarily
//! large indices without cost. Every `FiniteSeq` lies in all of the spaces
//! handled here: c00 is contained in l1, bv0, and the weighted space alike.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Element of c00: finitely many nonzero coordinates, indices starting at 1.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FiniteSeq {
    coords: BTreeMap<u64, Scalar>,
}

impl FiniteSeq {
    pub fn zero() -> Self {
        FiniteSeq::default()
    }

    /// The standard basis vector `e_n`. Panics for `n == 0` (indices are 1-based).
    pub fn basis(n: u64) -> Self {
        assert!(n >= 1, "indices are 1-based");
        let mut coords = BTreeMap::new();
        coords.insert(n, Scalar::one());
        FiniteSeq { coords }
    }

    /// Builds from `(index, value)` pairs; zero values are dropped, repeated
    /// indices are summed. Panics on index 0.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, Scalar)>,
    {
        let mut coords: BTreeMap<u64, Scalar> = BTreeMap::new();
        for (k, v) in pairs {
            assert!(k >= 1, "indices are 1-based");
            if v.is_zero() {
                continue;
            }
            match coords.remove(&k) {
                Some(old) => {
                    let sum = &old + &v;
                    if !sum.is_zero() {
                        coords.insert(k, sum);
                    }
                }
                None => {
                    coords.insert(k, v);
                }
            }
        }
        FiniteSeq { coords }
    }

    /// Dense prefix constructor: `values[i]` becomes coordinate `i + 1`.
    pub fn from_dense(values: &[Scalar]) -> Self {
        FiniteSeq::from_pairs(
            values
                .iter()
                .enumerate()
                .map(|(i, v)| (i as u64 + 1, v.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Largest index carrying a nonzero coordinate; 0 for the zero sequence.
    pub fn support_max(&self) -> u64 {
        self.coords.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of nonzero coordinates.
    pub fn nnz(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate at `k` (zero off the support). Panics for `k == 0`.
    pub fn get(&self, k: u64) -> Scalar {
        assert!(k >= 1, "indices are 1-based");
        self.coords.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> + '_ {
        self.coords.iter().map(|(k, v)| (*k, v))
    }

    pub fn add(&self, other: &FiniteSeq) -> FiniteSeq {
        let mut coords = self.coords.clone();
        for (k, v) in &other.coords {
            match coords.remove(k) {
                Some(old) => {
                    let sum = &old + v;
                    if !sum.is_zero() {
                        coords.insert(*k, sum);
                    }
                }
                None => {
                    coords.insert(*k, v.clone());
                }
            }
        }
        FiniteSeq { coords }
    }

    pub fn sub(&self, other: &FiniteSeq) -> FiniteSeq {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FiniteSeq {
        FiniteSeq {
            coords: self.coords.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FiniteSeq {
        if c.is_zero() {
            return FiniteSeq::zero();
        }
        FiniteSeq {
            coords: self.coords.iter().map(|(k, v)| (*k, c * v)).collect(),
        }
    }

    /// Right shift by `n` with a scale: coordinate `k` of the result is
    /// `scale * x_{k-n}` (zero for `k <= n`). The support moves up by `n`.
    pub fn shift_right(&self, n: u64, scale: &Scalar) -> FiniteSeq {
        if scale.is_zero() {
            return FiniteSeq::zero();
        }
        FiniteSeq {
            coords: self
                .coords
                .iter()
                .map(|(k, v)| (k + n, scale * v))
                .collect(),
        }
    }

    /// Left shift by `n` with a scale: coordinate `k` of the result is
    /// `scale * x_{k+n}`. Coordinates at indices `<= n` are discarded, so
    /// this inverts `shift_right` exactly.
    pub fn shift_left(&self, n: u64, scale: &Scalar) -> FiniteSeq {
        if scale.is_zero() {
            return FiniteSeq::zero();
        }
        FiniteSeq {
            coords: self
                .coords
                .iter()
                .filter(|(k, _)| **k > n)
                .map(|(k, v)| (k - n, scale * v))
                .collect(),
        }
    }

    /// Applies an exact coordinate map `v_k -> f(k, v_k)` over the support,
    /// dropping zeros produced by `f`.
    pub fn map_coords<F>(&self, mut f: F) -> FiniteSeq
    where
        F: FnMut(u64, &Scalar) -> Scalar,
    {
        FiniteSeq {
            coords: self
                .coords
                .iter()
                .filter_map(|(k, v)| {
                    let w = f(*k, v);
                    if w.is_zero() {
                        None
                    } else {
                        Some((*k, w))
                    }
                })
                .collect(),
        }
    }

    /// Indices `k` where the k-th difference-style norm term can be nonzero,
    /// i.e. `x_k != 0` or `x_{k+1} != 0`, in ascending order.
    pub fn difference_support(&self) -> Vec<u64> {
        let mut keys: Vec<u64> = Vec::with_capacity(self.coords.len() * 2);
        for &k in self.coords.keys() {
            if k >= 2 {
                keys.push(k - 1);
            }
            keys.push(k);
        }
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// True if every coordinate is rational.
    pub fn is_rational(&self) -> bool {
        self.coords.values().all(Scalar::is_rational)
    }
}

impl fmt::Debug for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn canonical_equality_under_permuted_insertion() {
        let a = FiniteSeq::from_pairs([
            (3, Scalar::from_ratio(1, 2)),
            (1, Scalar::from_int(2)),
            (7, Scalar::from_int(-1)),
        ]);
        let b = FiniteSeq::from_pairs([
            (7, Scalar::from_int(-1)),
            (1, Scalar::from_int(2)),
            (3, Scalar::from_ratio(1, 2)),
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn zeros_never_stored() {
        let a = FiniteSeq::from_pairs([
            (2, Scalar::from_int(5)),
            (2, Scalar::from_int(-5)),
            (4, Scalar::zero()),
        ]);
        assert!(a.is_zero());
        assert_eq!(a.support_max(), 0);
    }

    #[test]
    fn shift_right_definition() {
        // e1 shifted right by 2 with scale 1/4 -> (0, 0, 1/4, 0, ...)
        let x = FiniteSeq::basis(1).shift_right(2, &Scalar::from_ratio(1, 4));
        assert_eq!(x.get(3), Scalar::from_ratio(1, 4));
        assert_eq!(x.get(1), Scalar::zero());
        assert_eq!(x.support_max(), 3);

        // identity shift
        let y = FiniteSeq::from_pairs([(1, Scalar::from_int(1)), (2, Scalar::from_int(2))]);
        assert_eq!(y.shift_right(0, &Scalar::one()), y);

        // (1,2,0,...) shifted right by 1 with scale 1/2 -> (0, 1/2, 1, 0, ...)
        let z = y.shift_right(1, &Scalar::from_ratio(1, 2));
        assert_eq!(
            z,
            FiniteSeq::from_pairs([(2, Scalar::from_ratio(1, 2)), (3, Scalar::from_int(1))])
        );
    }

    #[test]
    fn shift_round_trip() {
        let x = FiniteSeq::from_pairs([
            (1, Scalar::from_ratio(-3, 7)),
            (5, Scalar::from_int(4)),
            (9, Scalar::complex(rat(1, 2), rat(1, 3))),
        ]);
        let w = Scalar::from_ratio(2, 3);
        let back = x
            .shift_right(4, &w)
            .shift_left(4, &w.recip().unwrap());
        assert_eq!(back, x);
    }
}
