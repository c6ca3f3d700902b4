//! Exact scalars over the field of rationals or complex rationals.
//!
//! Every scalar is kept in canonical form: fractions reduced with positive
//! denominators (handled by `num-rational`), and a complex representation
//! only while the imaginary part is nonzero. Equality is therefore
//! syntactic. The absolute value of a complex rational is irrational in
//! general and is *not* a `Scalar`; modulus comparisons go through
//! [`Scalar::abs_sq`] or the bracketing helpers in [`crate::bracket`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational, the real workhorse type.
pub type Rat = BigRational;

/// An element of the scalar field: exact rational or complex rational.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rat),
    /// Invariant: `im` is nonzero; a vanishing imaginary part collapses to
    /// `Rational` at construction time.
    Complex { re: Rat, im: Rat },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rat::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::Complex {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rat::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an exact rational. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rational(r)
    }

    /// Canonicalizing complex constructor: `im == 0` yields the rational.
    pub fn complex(re: Rat, im: Rat) -> Self {
        if im.is_zero() {
            Scalar::Rational(re)
        } else {
            Scalar::Complex { re, im }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn re(&self) -> &Rat {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Complex { re, .. } => re,
        }
    }

    pub fn im(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Complex { im, .. } => Some(im),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Complex { .. } => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Complex { re, im } => Scalar::Complex {
                re: re.clone(),
                im: -im.clone(),
            },
        }
    }

    /// Squared modulus `|s|^2`, always an exact rational.
    pub fn abs_sq(&self) -> Rat {
        match self {
            Scalar::Rational(r) => r * r,
            Scalar::Complex { re, im } => re * re + im * im,
        }
    }

    /// Compares `|self|` with a nonnegative rational bound via squares.
    pub fn abs_cmp(&self, bound: &Rat) -> std::cmp::Ordering {
        debug_assert!(!bound.is_negative());
        self.abs_sq().cmp(&(bound * bound))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Complex { re, im } => {
                let d = re * re + im * im;
                Scalar::complex(re / &d, -im / &d)
            }
        })
    }

    /// Integer power with binary exponentiation. `0^0 == 1` by convention;
    /// a negative exponent of zero is an error.
    pub fn pow(&self, exp: i64) -> Result<Scalar, Error> {
        if exp == 0 {
            return Ok(Scalar::one());
        }
        if self.is_zero() {
            if exp < 0 {
                return Err(Error::ZeroWeight);
            }
            return Ok(Scalar::zero());
        }
        let base = if exp < 0 {
            self.recip().expect("nonzero checked above")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Complex { .. } => f64::NAN,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Rational(a), Complex { re, im }) | (Complex { re, im }, Rational(a)) => {
                Scalar::complex(a + re, im.clone())
            }
            (Complex { re: a, im: b }, Complex { re: c, im: d }) => Scalar::complex(a + c, b + d),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Complex { re, im } => Scalar::Complex {
                re: -re,
                im: -im,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Rational(a), Complex { re, im }) | (Complex { re, im }, Rational(a)) => {
                Scalar::complex(a * re, a * im)
            }
            (Complex { re: a, im: b }, Complex { re: c, im: d }) => {
                Scalar::complex(a * c - b * d, a * d + b * c)
            }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Complex { re, im } => {
                let unit = |r: &Rat| r.numer().magnitude() == &1u32.into() && r.denom().is_one();
                if re.is_zero() {
                    match (im.is_negative(), unit(im)) {
                        (false, true) => write!(f, "i"),
                        (true, true) => write!(f, "-i"),
                        _ => write!(f, "{im}i"),
                    }
                } else if im.is_negative() {
                    if unit(im) {
                        write!(f, "{re}-i")
                    } else {
                        write!(f, "{re}-{}i", -im)
                    }
                } else if unit(im) {
                    write!(f, "{re}+i")
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p/q"`, `"p"`, `"i"`, `"-i"`, or a complex pair `"re,im"`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "i" => return Ok(Scalar::i()),
            "-i" => return Ok(-Scalar::i()),
            _ => {}
        }
        if let Some((re, im)) = s.split_once(',') {
            let re = parse_rat(re)?;
            let im = parse_rat(im)?;
            return Ok(Scalar::complex(re, im));
        }
        parse_rat(s).map(Scalar::Rational)
    }
}

/// Parses a rational from a `"p/q"` or `"p"` string.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    Rat::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Renders a rational as a correctly rounded decimal with `digits` places
/// after the point (round half away from zero). Display only; nothing in
/// the library consumes decimal strings.
pub fn to_decimal_string(r: &Rat, digits: usize) -> String {
    let ten = BigInt::from(10);
    let mut scale = BigInt::one();
    for _ in 0..digits {
        scale = &scale * &ten;
    }
    let num = r.numer().abs() * &scale;
    let den = r.denom().clone();
    let (mut q, rem) = num_integer::Integer::div_rem(&num, &den);
    if &rem * 2 >= den {
        q += 1;
    }
    let (int_part, frac_part) = num_integer::Integer::div_rem(&q, &scale);
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Convenience: rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience: rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `1/n` for an index-like denominator.
pub fn rat_recip(n: u64) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(n))
}
