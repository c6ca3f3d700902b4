//! Crate-wide error type.

use thiserror::Error;

use crate::norms::Space;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence is provably not a member of {space}: {reason}")]
    NotAMember { space: Space, reason: String },

    #[error("family is a member of the space; its norm series converges")]
    NotDivergent,

    #[error("undecidable without a closed-form rule: {0}")]
    Undecidable(String),

    #[error("weight w = 0 where w^-1 is required")]
    ZeroWeight,

    #[error("unbounded shift variant requires |w| > 1")]
    UnboundedVariantWeight,

    #[error("input outside the operator domain: {0}")]
    DomainViolation(String),

    #[error("orbit gaps too small: target {target} has error bound {bound} >= epsilon {epsilon}")]
    GapsTooSmall {
        target: usize,
        bound: String,
        epsilon: String,
    },

    #[error("periodic base has support_max {support_max} outside [1, {period}]")]
    SupportTooWide { support_max: u64, period: u64 },

    #[error("candidate coordinates are equal; no obstruction for constant prefixes")]
    ConstantCandidate,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}
