//! Eigenvector constructors and spectral witnesses for the weighted
//! backward shifts.
//!
//! For the bounded shift `A_w x = w (x_{k+1})` the eigenvalue equation
//! forces the geometric candidate `x = ((lambda/w)^(k-1))`, which lies in
//! the space iff `|lambda/w| < 1` or `lambda = w`; on the boundary circle
//! minus `w` the candidate's norm series diverges and a divergence index
//! is the witness. For the unbounded shift every scalar is an eigenvalue
//! with the super-geometric eigenvector `y_k = lambda^(k-1) w^(-k(k-1)/2)`
//! (normalized to `y_1 = 1`; any solution is a scalar multiple, so the
//! geometric multiplicity is 1).
//!
//! Full spectrum equality (a closed disk) is not decidable by finite
//! computation; what is produced here are the constructive ingredients:
//! eigenvectors, boundary divergence witnesses, and the Gelfand-radius
//! probe `||A^n||^(1/n) = (n+1)^(1/n) -> 1`. The residual spectrum is
//! empty for hypercyclic operators; that is documented, not tested.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::bracket::Bounds;
use crate::certificate::Certificate;
use crate::error::Error;
use crate::lazy::LazySeq;
use crate::norms::{divergence_witness, DivergenceWitness};
use crate::scalar::{rat_int, Rat, Scalar};
use crate::seq::FiniteSeq;
use crate::shifts::ShiftKind;

/// Evidence attached to a spectral verdict.
#[derive(Clone, Debug)]
pub enum SpectralEvidence {
    /// An eigenvector on which the defining recurrence holds exactly.
    Eigenvector(EigvecSeq),
    /// The norm series of the eigenvector candidate exceeds the threshold
    /// at this index.
    Divergence(DivergenceWitness),
    /// Plain-text justification (degenerate weights).
    Note(String),
}

/// Eigenvector carrier: a finite sequence or a lazy family.
#[derive(Clone, Debug)]
pub enum EigvecSeq {
    Finite(FiniteSeq),
    Lazy(LazySeq),
}

impl EigvecSeq {
    /// Coordinate access shared by both carriers (exact in every case the
    /// constructors produce).
    pub fn coord(&self, k: u64) -> Scalar {
        match self {
            EigvecSeq::Finite(x) => x.get(k),
            EigvecSeq::Lazy(s) => s
                .coord(k)
                .exact()
                .expect("constructed eigenvectors have exact coordinates")
                .clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpectralVerdictKind {
    Eigenvalue,
    NotEigenvalue,
    /// `|lambda| = |w|` but `lambda != w`: excluded from the point spectrum
    /// even though every smaller modulus is inside.
    BoundaryExcluded,
}

#[derive(Clone, Debug)]
pub struct SpectralWitness {
    pub lambda: Scalar,
    pub operator: String,
    pub verdict: SpectralVerdictKind,
    pub evidence: SpectralEvidence,
}

/// Default threshold for the embedded boundary divergence witnesses.
const BOUNDARY_THRESHOLD: i64 = 1;

/// Classifies `lambda` against the bounded shift `A_w` and produces the
/// witness: an eigenvector for `|lambda| < |w|` or `lambda = w`, a
/// divergence index otherwise.
pub fn eigvec_bounded(lambda: &Scalar, w: &Scalar) -> SpectralWitness {
    let operator = format!("bounded shift, w = {w}");
    if w.is_zero() {
        // the zero operator: only 0 is an eigenvalue, with eigenvector e_1
        return if lambda.is_zero() {
            SpectralWitness {
                lambda: lambda.clone(),
                operator,
                verdict: SpectralVerdictKind::Eigenvalue,
                evidence: SpectralEvidence::Eigenvector(EigvecSeq::Finite(FiniteSeq::basis(1))),
            }
        } else {
            SpectralWitness {
                lambda: lambda.clone(),
                operator,
                verdict: SpectralVerdictKind::NotEigenvalue,
                evidence: SpectralEvidence::Note(
                    "the zero-weight shift sends everything to zero".into(),
                ),
            }
        };
    }
    let mu = lambda / w;
    if mu.is_one() {
        // lambda = w: the constant sequence
        return SpectralWitness {
            lambda: lambda.clone(),
            operator,
            verdict: SpectralVerdictKind::Eigenvalue,
            evidence: SpectralEvidence::Eigenvector(EigvecSeq::Lazy(LazySeq::constant(
                Scalar::one(),
            ))),
        };
    }
    match mu.abs_cmp(&Rat::one()) {
        Ordering::Less => {
            let eigvec = if mu.is_zero() {
                // lambda = 0: A e_1 = 0
                EigvecSeq::Finite(FiniteSeq::basis(1))
            } else {
                // ((mu^(k-1))_k = mu^-1 * (mu^k)_k
                EigvecSeq::Lazy(LazySeq::scaled(
                    mu.recip().expect("nonzero mu"),
                    LazySeq::exponential(mu.clone()),
                ))
            };
            SpectralWitness {
                lambda: lambda.clone(),
                operator,
                verdict: SpectralVerdictKind::Eigenvalue,
                evidence: SpectralEvidence::Eigenvector(eigvec),
            }
        }
        Ordering::Equal => {
            let witness = divergence_witness(
                &LazySeq::exponential(mu.clone()),
                &rat_int(BOUNDARY_THRESHOLD),
            )
            .expect("|mu| = 1, mu != 1 diverges");
            SpectralWitness {
                lambda: lambda.clone(),
                operator,
                verdict: SpectralVerdictKind::BoundaryExcluded,
                evidence: SpectralEvidence::Divergence(witness),
            }
        }
        Ordering::Greater => {
            let witness = divergence_witness(
                &LazySeq::exponential(mu.clone()),
                &rat_int(BOUNDARY_THRESHOLD),
            )
            .expect("|mu| > 1 diverges");
            SpectralWitness {
                lambda: lambda.clone(),
                operator,
                verdict: SpectralVerdictKind::NotEigenvalue,
                evidence: SpectralEvidence::Divergence(witness),
            }
        }
    }
}

/// Every scalar is an eigenvalue of the unbounded shift (`|w| > 1`), with
/// the normalized eigenvector `y_k = lambda^(k-1) w^(-k(k-1)/2)`.
pub fn eigvec_unbounded(lambda: &Scalar, w: &Scalar) -> Result<SpectralWitness, Error> {
    let family = LazySeq::eigvec_unbounded(lambda.clone(), w.clone())?;
    Ok(SpectralWitness {
        lambda: lambda.clone(),
        operator: format!("unbounded shift, w = {w}"),
        verdict: SpectralVerdictKind::Eigenvalue,
        evidence: SpectralEvidence::Eigenvector(EigvecSeq::Lazy(family)),
    })
}

/// Verifies the defining recurrence of an eigenvector coordinatewise up to
/// `k_max`: `w x_{k+1} = lambda x_k` (bounded) or `w^k x_{k+1} = lambda x_k`
/// (unbounded), as exact scalar identities.
pub fn check_eigen_recurrence(
    kind: ShiftKind,
    lambda: &Scalar,
    w: &Scalar,
    eigvec: &EigvecSeq,
    k_max: u64,
) -> Certificate {
    let mut failures = 0u64;
    for k in 1..=k_max {
        let xk = eigvec.coord(k);
        let xk1 = eigvec.coord(k + 1);
        let lhs = match kind {
            ShiftKind::Bounded => w * &xk1,
            ShiftKind::Unbounded => &w.pow(k as i64).expect("nonzero w") * &xk1,
        };
        let rhs = lambda * &xk;
        if lhs != rhs {
            failures += 1;
        }
    }
    let identity = match kind {
        ShiftKind::Bounded => format!("w x_(k+1) = lambda x_k, lambda = {lambda}, w = {w}"),
        ShiftKind::Unbounded => format!("w^k x_(k+1) = lambda x_k, lambda = {lambda}, w = {w}"),
    };
    Certificate::exact(identity, rat_int(failures as i64)).with_truncation(k_max)
}

/// Solves the recurrence forward from an arbitrary seed and checks the
/// solution is the seed times the normalized eigenvector: the executable
/// form of geometric multiplicity one.
pub fn multiplicity_one_check(
    kind: ShiftKind,
    lambda: &Scalar,
    w: &Scalar,
    seed: &Scalar,
    k_max: u64,
) -> Result<Certificate, Error> {
    let reference: Box<dyn Fn(u64) -> Scalar> = match kind {
        ShiftKind::Bounded => {
            if w.is_zero() {
                return Err(Error::ZeroWeight);
            }
            let mu = lambda / w;
            Box::new(move |k| mu.pow(k as i64 - 1).expect("0^0 = 1 convention"))
        }
        ShiftKind::Unbounded => {
            let (l, ww) = (lambda.clone(), w.clone());
            Box::new(move |k| crate::lazy::eigvec_coord(&l, &ww, k))
        }
    };
    let mut failures = 0u64;
    let mut current = seed.clone();
    for k in 1..=k_max {
        if current != seed * &reference(k) {
            failures += 1;
        }
        // step the recurrence: x_{k+1} = lambda x_k / w   (bounded)
        //                      x_{k+1} = lambda x_k / w^k (unbounded)
        let denom = match kind {
            ShiftKind::Bounded => w.clone(),
            ShiftKind::Unbounded => w.pow(k as i64).expect("nonzero w"),
        };
        current = &(lambda * &current) / &denom;
    }
    Ok(
        Certificate::exact(
            format!("forward recurrence solution = x_1 * normalized eigenvector, lambda = {lambda}, w = {w}"),
            rat_int(failures as i64),
        )
        .with_truncation(k_max),
    )
}

/// One row of the Gelfand-radius table: a certified enclosure of
/// `(n+1)^(1/n)`, exact at `n = 1` and bisected to `2^-width_bits`
/// otherwise. The comparisons are pure integer power tests.
pub fn radius_bracket(n: u64, width_bits: u32) -> Bounds {
    assert!(n >= 1);
    if n == 1 {
        return Bounds::Exact(rat_int(2));
    }
    // invariant: lo^n <= n+1 < hi^n with hi - lo = 1 at scale 2^s, so the
    // bracket width is exactly 2^-s
    let target = BigInt::from(n + 1);
    let mut lo = BigInt::one(); // scaled by 2^s
    let mut hi = BigInt::from(2u32);
    let mut s = 0u32;
    while s < width_bits {
        s += 1;
        lo <<= 1;
        hi <<= 1;
        let mid = &lo + BigInt::one();
        // mid^n vs (n+1) 2^(s n), a pure integer comparison
        let lhs = Pow::pow(&mid, n);
        let rhs = &target << (s as usize * n as usize);
        if lhs <= rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let denom = BigInt::one() << s as usize;
    Bounds::bracket(Rat::new(lo, denom.clone()), Rat::new(hi, denom))
}

/// The Gelfand-radius probe: enclosures of `(n+1)^(1/n)` along a doubling
/// ladder up to `n_max`, demonstrating the monotone approach to 1.
pub fn spectral_radius_probe(n_max: u64, width_bits: u32) -> Vec<(u64, Bounds)> {
    assert!(n_max >= 1);
    let mut rows = Vec::new();
    let mut n = 1u64;
    while n < n_max {
        rows.push((n, radius_bracket(n, width_bits)));
        n = n.saturating_mul(2);
    }
    rows.push((n_max, radius_bracket(n_max, width_bits)));
    rows
}
