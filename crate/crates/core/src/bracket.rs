//! Certified rational brackets and integer-root machinery.
//!
//! A [`Bounds`] is either an exact rational or a closed interval with
//! rational endpoints that provably contains the (possibly irrational)
//! value. Endpoints are exact rationals, so interval sums need no directed
//! rounding. Square and n-th roots of rationals are bracketed through
//! integer roots of scaled integers; perfect powers are detected and
//! returned exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

/// Default bracket tightness, in bits: intervals are kept narrower than
/// `2^-DEFAULT_PREC_BITS` wherever a width is not requested explicitly.
pub const DEFAULT_PREC_BITS: u32 = 128;

/// An exact rational or a certified enclosure `[lo, hi]`.
#[derive(Clone, PartialEq, Eq)]
pub enum Bounds {
    Exact(Rat),
    Bracket { lo: Rat, hi: Rat },
}

impl Bounds {
    pub fn zero() -> Self {
        Bounds::Exact(Rat::zero())
    }

    /// Canonicalizing constructor: a degenerate interval is exact.
    pub fn bracket(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted bracket");
        if lo == hi {
            Bounds::Exact(lo)
        } else {
            Bounds::Bracket { lo, hi }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Bounds::Exact(_))
    }

    pub fn lo(&self) -> &Rat {
        match self {
            Bounds::Exact(r) => r,
            Bounds::Bracket { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            Bounds::Exact(r) => r,
            Bounds::Bracket { hi, .. } => hi,
        }
    }

    pub fn width(&self) -> Rat {
        self.hi() - self.lo()
    }

    pub fn add(&self, other: &Bounds) -> Bounds {
        match (self, other) {
            (Bounds::Exact(a), Bounds::Exact(b)) => Bounds::Exact(a + b),
            _ => Bounds::bracket(self.lo() + other.lo(), self.hi() + other.hi()),
        }
    }

    pub fn sub(&self, other: &Bounds) -> Bounds {
        match (self, other) {
            (Bounds::Exact(a), Bounds::Exact(b)) => Bounds::Exact(a - b),
            _ => Bounds::bracket(self.lo() - other.hi(), self.hi() - other.lo()),
        }
    }

    /// Scale by a rational of either sign.
    pub fn scale(&self, c: &Rat) -> Bounds {
        match self {
            Bounds::Exact(a) => Bounds::Exact(a * c),
            Bounds::Bracket { lo, hi } => {
                if c.is_negative() {
                    Bounds::bracket(hi * c, lo * c)
                } else {
                    Bounds::bracket(lo * c, hi * c)
                }
            }
        }
    }

    /// Interval product, assuming both operands are nonnegative.
    pub fn mul_nonneg(&self, other: &Bounds) -> Bounds {
        debug_assert!(!self.lo().is_negative() && !other.lo().is_negative());
        match (self, other) {
            (Bounds::Exact(a), Bounds::Exact(b)) => Bounds::Exact(a * b),
            _ => Bounds::bracket(self.lo() * other.lo(), self.hi() * other.hi()),
        }
    }

    /// Enclosure of the absolute value.
    pub fn abs(&self) -> Bounds {
        match self {
            Bounds::Exact(a) => Bounds::Exact(a.abs()),
            Bounds::Bracket { lo, hi } => {
                if !lo.is_negative() {
                    self.clone()
                } else if !hi.is_positive() {
                    Bounds::bracket(-hi.clone(), -lo.clone())
                } else {
                    let m = std::cmp::max(-lo.clone(), hi.clone());
                    Bounds::bracket(Rat::zero(), m)
                }
            }
        }
    }

    /// Three-way comparison against a rational, when conclusive.
    pub fn cmp_rat(&self, r: &Rat) -> Option<Ordering> {
        if self.lo() > r {
            Some(Ordering::Greater)
        } else if self.hi() < r {
            Some(Ordering::Less)
        } else if let Bounds::Exact(v) = self {
            Some(v.cmp(r))
        } else {
            None
        }
    }

    /// Hull of two enclosures (used for sup-style reports).
    pub fn max(&self, other: &Bounds) -> Bounds {
        match (self, other) {
            (Bounds::Exact(a), Bounds::Exact(b)) => Bounds::Exact(std::cmp::max(a, b).clone()),
            _ => Bounds::bracket(
                std::cmp::max(self.lo(), other.lo()).clone(),
                std::cmp::max(self.hi(), other.hi()).clone(),
            ),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bounds::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Bounds::Bracket { lo, hi } => {
                let (a, b) = (lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN));
                (a + b) / 2.0
            }
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bounds::Exact(r) => write!(f, "{r}"),
            Bounds::Bracket { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

impl fmt::Debug for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact n-th root of a nonnegative rational when it is a perfect power.
pub fn perfect_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    debug_assert!(n >= 1 && !r.is_negative());
    if n == 1 {
        return Some(r.clone());
    }
    let num_root = r.numer().nth_root(n);
    let den_root = r.denom().nth_root(n);
    if &pow_bigint(&num_root, n) == r.numer() && &pow_bigint(&den_root, n) == r.denom() {
        Some(Rat::new(num_root, den_root))
    } else {
        None
    }
}

/// Certified enclosure of `r^(1/n)` for `r >= 0`, with width `<= 2^-prec_bits`.
pub fn nth_root_bounds(r: &Rat, n: u32, prec_bits: u32) -> Bounds {
    debug_assert!(n >= 1 && !r.is_negative());
    if let Some(exact) = perfect_nth_root(r, n) {
        return Bounds::Exact(exact);
    }
    // r^(1/n) = (p q^(n-1))^(1/n) / q for r = p/q, so one integer root
    // of the scaled integer gives both endpoints.
    let p = r.numer();
    let q = r.denom();
    let m = p * pow_bigint(q, n - 1);
    let scaled = &m << (prec_bits as usize * n as usize);
    let s = scaled.nth_root(n);
    let denom = q * (BigInt::one() << prec_bits as usize);
    Bounds::bracket(
        Rat::new(s.clone(), denom.clone()),
        Rat::new(s + BigInt::one(), denom),
    )
}

/// Certified enclosure of `sqrt(r)` for `r >= 0`.
pub fn sqrt_bounds(r: &Rat, prec_bits: u32) -> Bounds {
    nth_root_bounds(r, 2, prec_bits)
}

/// Enclosure of the modulus `|s|`; exact whenever `|s|` is rational
/// (always for rational scalars, and for complex ones whose squared
/// modulus is a perfect rational square).
pub fn modulus(s: &Scalar, prec_bits: u32) -> Bounds {
    match s {
        Scalar::Rational(r) => Bounds::Exact(r.abs()),
        Scalar::Complex { .. } => sqrt_bounds(&s.abs_sq(), prec_bits),
    }
}

/// Rational upper bound on `|s|`, tight to `prec_bits`.
pub fn modulus_upper(s: &Scalar, prec_bits: u32) -> Rat {
    modulus(s, prec_bits).hi().clone()
}

/// `r^exp` for rational base and signed integer exponent.
/// Panics when `r == 0` and `exp < 0`.
pub fn pow_rat(r: &Rat, exp: i64) -> Rat {
    use num_traits::Pow;
    if exp == 0 {
        return Rat::one();
    }
    Pow::pow(r, exp)
}

fn pow_bigint(b: &BigInt, e: u32) -> BigInt {
    use num_traits::Pow;
    Pow::pow(b, e)
}

/// Enclosure of `r^(a/b)` for `r > 0` and a rational exponent `a/b`
/// (`b > 0`), exact when the underlying root is perfect.
pub fn rat_pow_bounds(base: &Rat, exp: &Rat, prec_bits: u32) -> Bounds {
    debug_assert!(base.is_positive());
    let a = exp
        .numer()
        .to_i64()
        .expect("exponent numerator exceeds i64");
    let b = exp
        .denom()
        .to_u32()
        .expect("exponent denominator exceeds u32");
    let powed = pow_rat(base, a);
    nth_root_bounds(&powed, b, prec_bits)
}
