//! Constructive dynamics: finite-target orbit vectors, periodic-point
//! synthesis with certified residuals, and the rigidity obstruction that
//! rules out non-constant periodic points at unit weights.

use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bracket::{modulus, Bounds};
use crate::error::Error;
use crate::norms::{norm_finite, Space};
use crate::scalar::{rat_int, Rat, Scalar};
use crate::seq::FiniteSeq;
use crate::shifts::{
    apply_right_inverse, inverse_weight_decay, right_inverse_decay_bound, ShiftKind, ShiftOp,
};
use crate::sum::{crossing_index, Crossing};

/// A finite list of targets together with the shift exponents ("gaps") at
/// which the orbit is steered toward each of them.
#[derive(Clone, Debug)]
pub struct OrbitPlan {
    pub targets: Vec<FiniteSeq>,
    pub gaps: Vec<u64>,
    pub epsilon: Rat,
}

/// The assembled orbit vector `x = sum_j B_w^{m_j} y_j` with the certified
/// per-target error bounds on `||A_w^{m_j} x - y_j||`.
#[derive(Clone, Debug)]
pub struct OrbitVector {
    pub vector: FiniteSeq,
    pub bounds: Vec<Rat>,
}

/// Chooses the smallest gap schedule satisfying, for every pair `i > j`,
///
/// * `m_i - m_j >= support_max(y_j)`, so the forward shifts annihilate
///   earlier blocks exactly, and
/// * `decay(m_i - m_j) ||y_i||_1 <= eps / 2^(i-j+1)`, so the per-target
///   error sums are geometrically split below `eps / 2`.
///
/// Deterministic by construction: each gap is the maximum of its exact
/// pairwise requirements.
pub fn plan_gaps(
    targets: &[FiniteSeq],
    kind: ShiftKind,
    w: &Scalar,
    epsilon: &Rat,
) -> Result<OrbitPlan, Error> {
    check_orbit_weight(kind, w)?;
    if !epsilon.is_positive() {
        return Err(Error::DomainViolation("epsilon must be positive".into()));
    }
    let l1: Vec<Rat> = targets
        .iter()
        .map(|y| norm_finite(y, Space::L1).value.hi().clone())
        .collect();
    let mut gaps: Vec<u64> = Vec::with_capacity(targets.len());
    for i in 0..targets.len() {
        if i == 0 {
            gaps.push(0);
            continue;
        }
        let mut m_i = 0u64;
        for j in 0..i {
            let d = (i - j) as u32;
            let budget = epsilon / crate::bracket::pow_rat(&rat_int(2), i64::from(d) + 1);
            let needed = gaps[j]
                + targets[j]
                    .support_max()
                    .max(decay_steps(kind, w, &l1[i], &budget));
            m_i = m_i.max(needed);
        }
        // strict monotonicity even for trivial targets
        m_i = m_i.max(gaps[i - 1] + 1);
        gaps.push(m_i);
    }
    Ok(OrbitPlan {
        targets: targets.to_vec(),
        gaps,
        epsilon: epsilon.clone(),
    })
}

/// Smallest `m` with `decay(m) * l1 <= budget` for the right-inverse decay
/// of the given kind.
fn decay_steps(kind: ShiftKind, w: &Scalar, l1: &Rat, budget: &Rat) -> u64 {
    if l1.is_zero() {
        return 0;
    }
    if kind == ShiftKind::Bounded && w.abs_sq() == Rat::one() {
        // 2 l1 / (m + 1) <= budget  <=>  m >= 2 l1 / budget - 1
        let ratio = rat_int(2) * l1 / budget;
        let ceil = ratio.ceil().to_integer().to_u64().unwrap_or(u64::MAX);
        return ceil.saturating_sub(1);
    }
    // geometric decay: walk m upward; |w| > 1 so this terminates fast
    let mut m = 0u64;
    while &(inverse_weight_decay(w, m) * l1) > budget {
        m += 1;
    }
    m
}

fn check_orbit_weight(kind: ShiftKind, w: &Scalar) -> Result<(), Error> {
    match kind {
        ShiftKind::Bounded => {
            if w.abs_cmp(&Rat::one()) == Ordering::Less {
                return Err(Error::DomainViolation(
                    "orbit construction needs |w| >= 1 (contracting shifts have no dense orbits)"
                        .into(),
                ));
            }
        }
        ShiftKind::Unbounded => {
            if w.abs_cmp(&Rat::one()) != Ordering::Greater {
                return Err(Error::UnboundedVariantWeight);
            }
        }
    }
    Ok(())
}

/// Assembles `x = sum_j B_w^{m_j} y_j` and certifies, per target, the
/// exact bound `||A_w^{m_j} x - y_j|| <= sum_{i>j} decay(m_i - m_j)
/// ||y_i||_1`, which the plan keeps below epsilon. The forward-shift terms
/// from earlier blocks vanish exactly under the plan's support condition.
pub fn build_orbit_vector(
    plan: &OrbitPlan,
    kind: ShiftKind,
    w: &Scalar,
) -> Result<OrbitVector, Error> {
    check_orbit_weight(kind, w)?;
    if plan.gaps.len() != plan.targets.len() {
        return Err(Error::DomainViolation(
            "plan needs one gap per target".into(),
        ));
    }
    if plan.gaps.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::DomainViolation(
            "gaps must be strictly increasing".into(),
        ));
    }
    // support condition: A^{m_i - m_j} y_j = 0 for i > j
    for i in 1..plan.targets.len() {
        for j in 0..i {
            if plan.gaps[i] - plan.gaps[j] < plan.targets[j].support_max() {
                return Err(Error::GapsTooSmall {
                    target: j,
                    bound: "forward shift of an earlier block survives".into(),
                    epsilon: plan.epsilon.to_string(),
                });
            }
        }
    }

    let mut vector = FiniteSeq::zero();
    for (y, &m) in plan.targets.iter().zip(&plan.gaps) {
        vector = vector.add(&apply_right_inverse(kind, w, m, y)?);
    }

    let l1: Vec<Rat> = plan
        .targets
        .iter()
        .map(|y| norm_finite(y, Space::L1).value.hi().clone())
        .collect();
    let mut bounds = Vec::with_capacity(plan.targets.len());
    for j in 0..plan.targets.len() {
        let mut total = Rat::zero();
        for i in (j + 1)..plan.targets.len() {
            total += right_inverse_decay_bound(kind, w, plan.gaps[i] - plan.gaps[j], &l1[i])?;
        }
        if &total >= &plan.epsilon {
            return Err(Error::GapsTooSmall {
                target: j,
                bound: total.to_string(),
                epsilon: plan.epsilon.to_string(),
            });
        }
        bounds.push(total);
    }
    Ok(OrbitVector { vector, bounds })
}

/// A truncated periodic point `value = sum_{k=0}^{M} B_w^{kN} base` for the
/// period-N dynamics, with its exactly evaluated residual.
#[derive(Clone, Debug)]
pub struct PeriodicPoint {
    pub base: FiniteSeq,
    pub period: u64,
    pub blocks: u64,
    pub value: FiniteSeq,
    /// `||A_w^N value - value||`, computed exactly; equals
    /// `||B_w^{MN} base||` by telescoping.
    pub residual: Bounds,
    /// Geometric certificate `|w|^-MN ||base||_1` dominating the residual.
    pub tail_norm_bound: Rat,
}

/// Builds the truncated periodic point. Requires `support(base) <= N`
/// (so `A_w^N` annihilates the base block) and `|w| > 1` (so the blocks
/// contract geometrically).
pub fn build_periodic_point(
    base: &FiniteSeq,
    period: u64,
    w: &Scalar,
    kind: ShiftKind,
    blocks: u64,
) -> Result<PeriodicPoint, Error> {
    if period == 0 {
        return Err(Error::DomainViolation("period must be >= 1".into()));
    }
    if base.support_max() > period {
        return Err(Error::SupportTooWide {
            support_max: base.support_max(),
            period,
        });
    }
    if w.abs_cmp(&Rat::one()) != Ordering::Greater {
        return Err(Error::UnboundedVariantWeight);
    }

    let mut value = FiniteSeq::zero();
    for k in 0..=blocks {
        value = value.add(&apply_right_inverse(kind, w, k * period, base)?);
    }

    let op = ShiftOp::new(kind, w.clone(), period)?;
    let moved = op.apply(&value)?;
    let defect = moved.sub(&value);

    // telescoping: A^N value - value = -B^{MN} base, as sequences
    let last_block = apply_right_inverse(kind, w, blocks * period, base)?;
    debug_assert_eq!(defect, last_block.neg());

    let residual = norm_finite(&defect, Space::X).value;
    let l1 = norm_finite(base, Space::L1).value.hi().clone();
    let tail_norm_bound = inverse_weight_decay(w, blocks * period) * l1;
    Ok(PeriodicPoint {
        base: base.clone(),
        period,
        blocks,
        value,
        residual,
        tail_norm_bound,
    })
}

/// A certified index at which the obstruction series has exceeded the
/// threshold.
#[derive(Clone, Debug)]
pub struct ObstructionWitness {
    pub index: u64,
    pub partial_sum: Bounds,
    pub threshold: Rat,
}

/// The rigidity obstruction at unit weights: if a candidate periodic point
/// of period `N` had two consecutive coordinates `x_j != x_{j+1}`, its norm
/// would dominate `sum_k |x_{j+1}/(j+1+kN) - x_j/(j+kN)|` (the weight
/// factors `|w|^{-kN}` all equal 1), which diverges. This returns the
/// smallest `K` at which the exact partial sum exceeds `threshold`; only
/// the two coordinates named by `j` are ever inspected, matching what the
/// argument actually uses.
pub fn periodicity_obstruction(
    x: &FiniteSeq,
    j: u64,
    period: u64,
    threshold: &Rat,
) -> Result<ObstructionWitness, Error> {
    if period == 0 {
        return Err(Error::DomainViolation("period must be >= 1".into()));
    }
    let xj = x.get(j);
    let xj1 = x.get(j + 1);
    if xj == xj1 {
        return Err(Error::ConstantCandidate);
    }
    let term = |k: u64, prec: u32| -> Bounds {
        let denom1 = rat_int((j + 1 + k * period) as i64);
        let denom0 = rat_int((j + k * period) as i64);
        let diff = &(&xj1 / &Scalar::Rational(denom1)) - &(&xj / &Scalar::Rational(denom0));
        modulus(&diff, prec)
    };
    let (aj, aj1) = (scalar_f64_abs_parts(&xj), scalar_f64_abs_parts(&xj1));
    let mut term_f64 = |k: u64| -> f64 {
        let d1 = (j + 1 + k * period) as f64;
        let d0 = (j + k * period) as f64;
        let re = aj1.0 / d1 - aj.0 / d0;
        let im = aj1.1 / d1 - aj.1 / d0;
        re.hypot(im)
    };
    let Crossing {
        index, partial_sum, ..
    } = crossing_index(&mut |k, p| term(k, p), &mut term_f64, threshold);
    Ok(ObstructionWitness {
        index,
        partial_sum,
        threshold: threshold.clone(),
    })
}

fn scalar_f64_abs_parts(s: &Scalar) -> (f64, f64) {
    match s {
        Scalar::Rational(r) => (r.to_f64().unwrap_or(0.0), 0.0),
        Scalar::Complex { re, im } => (
            re.to_f64().unwrap_or(0.0),
            im.to_f64().unwrap_or(0.0),
        ),
    }
}
