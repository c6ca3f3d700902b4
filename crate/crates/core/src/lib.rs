//! Exact computation in a nonclassical sequence space and its isometric
//! siblings.
//!
//! The central object is the Banach space of sequences with
//! `sum_k |x_{k+1}/(k+1) - x_k/k| < infinity` and `x_k/k -> 0`, normed by
//! that sum. It is isometrically isomorphic to `bv0` (via `x -> (x_k/k)`)
//! and to `l1` (via the difference map `J`), and the weighted backward
//! shifts living on it — bounded `w (x_{k+1})` and unbounded
//! `(w^k x_{k+1})` — have fully computable structure: norm identities,
//! right inverses with certified decay, eigenvector families, and the four
//! operators obtained by conjugating across `J`.
//!
//! Everything on finitely supported sequences is exact rational (or
//! complex-rational) arithmetic; analytic families carry certified tail
//! bounds so norms come back either exact or as rational brackets.

pub mod bracket;
pub mod certificate;
pub mod conjugates;
pub mod dynamics;
pub mod error;
pub mod generate;
pub mod iso;
pub mod lazy;
pub mod norms;
pub mod scalar;
pub mod schema;
pub mod seq;
pub mod shifts;
pub mod spectral;
pub mod sum;

pub use bracket::{Bounds, DEFAULT_PREC_BITS};
pub use certificate::{Certificate, CheckMode};
pub use conjugates::{apply_composed, apply_conjugate, verify_conjugacy, ConjugateOp, ConjugateWhich};
pub use dynamics::{
    build_orbit_vector, build_periodic_point, periodicity_obstruction, plan_gaps,
    ObstructionWitness, OrbitPlan, OrbitVector, PeriodicPoint,
};
pub use error::Error;
pub use iso::{apply_iso, verify_isometry, IsoMap};
pub use lazy::{CoordValue, LazySeq};
pub use norms::{
    converges_diagnostic, divergence_witness, membership, norm_finite, norm_lazy,
    ConvergenceReport, DivergenceWitness, MembershipVerdict, NormOptions, NormValue, Space,
    Verdict,
};
pub use scalar::{Rat, Scalar};
pub use schema::AnySeq;
pub use seq::FiniteSeq;
pub use shifts::{
    apply_bounded, apply_right_inverse, apply_unbounded, apply_unbounded_lazy,
    norm_identity_witness, witness_vector, ShiftKind, ShiftOp,
};
pub use spectral::{
    check_eigen_recurrence, eigvec_bounded, eigvec_unbounded, multiplicity_one_check,
    spectral_radius_probe, EigvecSeq, SpectralEvidence, SpectralVerdictKind, SpectralWitness,
};
