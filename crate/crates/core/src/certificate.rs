//! Verification records produced by the identity checks.

use std::fmt;

use num_traits::Zero;

use crate::bracket::Bounds;
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Both sides are exact rationals; residual 0 means syntactic equality.
    Exact,
    /// At least one side is a certified enclosure of the given tightness.
    Bracket { prec_bits: u32 },
}

/// Outcome of one verified identity.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The identity that was checked, written out mathematically.
    pub identity: String,
    pub mode: CheckMode,
    pub passed: bool,
    /// `|lhs - rhs|` (an enclosure of it in bracket mode).
    pub residual: Bounds,
    /// Truncation index, for checks evaluated over a finite prefix.
    pub truncation: Option<u64>,
}

impl Certificate {
    /// Exact-mode certificate from an exact residual.
    pub fn exact(identity: impl Into<String>, residual: Rat) -> Self {
        Certificate {
            identity: identity.into(),
            mode: CheckMode::Exact,
            passed: residual.is_zero(),
            residual: Bounds::Exact(residual),
            truncation: None,
        }
    }

    /// Exact-mode certificate from an explicit pass/fail comparison
    /// (used for inequality checks where there is no residual to show).
    pub fn exact_check(identity: impl Into<String>, passed: bool) -> Self {
        Certificate {
            identity: identity.into(),
            mode: CheckMode::Exact,
            passed,
            residual: Bounds::zero(),
            truncation: None,
        }
    }

    /// Compares two enclosures; passes when they are equal (exact case) or
    /// provably overlap within their widths (bracket case).
    pub fn from_bounds(identity: impl Into<String>, lhs: &Bounds, rhs: &Bounds) -> Self {
        let diff = lhs.sub(rhs).abs();
        match (lhs, rhs) {
            (Bounds::Exact(_), Bounds::Exact(_)) => Certificate {
                identity: identity.into(),
                mode: CheckMode::Exact,
                passed: diff.lo().is_zero(),
                residual: diff,
                truncation: None,
            },
            _ => Certificate {
                identity: identity.into(),
                mode: CheckMode::Bracket {
                    prec_bits: crate::bracket::DEFAULT_PREC_BITS,
                },
                // enclosures intersect iff |lhs - rhs| encloses zero
                passed: diff.lo().is_zero(),
                residual: diff,
                truncation: None,
            },
        }
    }

    pub fn with_truncation(mut self, k: u64) -> Self {
        self.truncation = Some(k);
        self
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] residual {} : {}",
            self.identity,
            match self.mode {
                CheckMode::Exact => "exact".to_string(),
                CheckMode::Bracket { prec_bits } => format!("bracket/{prec_bits}b"),
            },
            self.residual,
            if self.passed { "PASS" } else { "FAIL" },
        )
    }
}
