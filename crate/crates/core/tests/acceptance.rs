//! End-to-end acceptance suite. Each test prints one PASS line; a failed
//! assertion is the FAIL line. Tolerances are zero unless a bracket is the
//! stated contract, and every threshold is pinned in code here.

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqlab_core::bracket::pow_rat;
use seqlab_core::generate::{random_finite_seq, SeqParams};
use seqlab_core::scalar::{rat, rat_int};
use seqlab_core::*;

fn exact(b: &Bounds) -> Rat {
    match b {
        Bounds::Exact(v) => v.clone(),
        other => panic!("expected exact value, got {other}"),
    }
}

fn norm_x(x: &FiniteSeq) -> Rat {
    exact(&norms::norm_finite(x, Space::X).value)
}

fn report(criterion: &str) {
    println!("[acceptance] {criterion}: PASS");
}

/// Criterion 1: norm identities. For n = 1..50, ||x^(n)|| = 1 and
/// ||A^n x^(n)|| = n + 1 exactly; ||A_w^n x^(n)|| = |w|^n (n+1) for
/// w in {2, 3/2}. Runtime under 1 s.
#[test]
fn criterion_01_norm_identities() {
    let start = Instant::now();
    for n in 1..=50u64 {
        let x = witness_vector(n);
        assert_eq!(norm_x(&x), Rat::one(), "||x^({n})|| = 1");
        let image = apply_bounded(&Scalar::one(), n, &x);
        assert_eq!(norm_x(&image), rat_int(n as i64 + 1), "||A^{n} x^({n})||");
        for w in [rat(2, 1), rat(3, 2)] {
            let image = apply_bounded(&Scalar::from_rat(w.clone()), n, &x);
            let expected = pow_rat(&w, n as i64) * rat_int(n as i64 + 1);
            assert_eq!(norm_x(&image), expected, "w = {w}, n = {n}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?} >= 1 s");
    report("criterion 01 norm identities (n = 1..50, w in {1, 2, 3/2})");
}

fn corpus(seed: u64, count: usize) -> Vec<FiniteSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = SeqParams::default(); // support <= 64, |num|, den <= 10^6
    (0..count).map(|_| random_finite_seq(&mut rng, &params)).collect()
}

/// Criterion 2: isometry suite on 500 random sequences. The three norm
/// identities and both round trips, all exact, under 5 s.
#[test]
fn criterion_02_isometry_suite() {
    let start = Instant::now();
    for x in corpus(0x5EA1AB ^ 2, 500) {
        for map in [IsoMap::J1, IsoMap::J2, IsoMap::J] {
            let source = exact(&norms::norm_finite(&x, map.source()).value);
            let image = apply_iso(map, &x);
            let target = exact(&norms::norm_finite(&image, map.target()).value);
            assert_eq!(source, target, "||{map} x|| = ||x||");
            assert_eq!(apply_iso(map.inverse(), &image), x, "{map} round trip");
            let pre = apply_iso(map.inverse(), &x);
            assert_eq!(apply_iso(map, &pre), x, "{map} reverse round trip");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} >= 5 s");
    report("criterion 02 isometry suite (500 sequences, zero tolerance)");
}

/// Criterion 3: embedding estimates on the same corpus:
/// ||z|| <= ||z||_1, ||z||_0 <= 2 ||z||_1, ||y|| <= ||y||_0.
#[test]
fn criterion_03_embedding_estimates() {
    for z in corpus(0x5EA1AB ^ 2, 500) {
        let weighted = norm_x(&z);
        let variation = exact(&norms::norm_finite(&z, Space::Bv0).value);
        let summing = exact(&norms::norm_finite(&z, Space::L1).value);
        assert!(weighted <= summing, "||z|| <= ||z||_1");
        assert!(variation <= rat_int(2) * &summing, "||z||_0 <= 2 ||z||_1");
        assert!(weighted <= variation, "||y|| <= ||y||_0");
    }
    report("criterion 03 embedding estimates (500 sequences, exact comparisons)");
}

/// Criterion 4: all four conjugate operators. 200 random sequences x
/// n in 0..=8 x w in {2, 3}: closed form equals the composition through
/// the isomorphisms coordinatewise, exactly.
#[test]
fn criterion_04_conjugacy() {
    for x in corpus(0x5EA1AB ^ 4, 200) {
        for which in ConjugateWhich::ALL {
            for w in [2i64, 3] {
                for n in 0..=8u64 {
                    let op = ConjugateOp::new(which, Scalar::from_int(w), n).unwrap();
                    let closed = apply_conjugate(&op, &x).unwrap();
                    let composed = apply_composed(&op, &x).unwrap();
                    assert_eq!(closed, composed, "{} w={w} n={n}", which.name());
                }
            }
        }
    }
    report("criterion 04 conjugacy (200 sequences x n in 0..=8 x w in {2,3} x 4 operators)");
}

/// Criterion 5: right-inverse law and decay. A_w^n B_w^n = id exactly;
/// ||B_w^n x|| <= 2 ||x||_1 / (n+1) at |w| = 1 and <= |w|^-n ||x||_1 at
/// |w| > 1, for n <= 100.
#[test]
fn criterion_05_right_inverse_and_decay() {
    let xs = corpus(0x5EA1AB ^ 5, 8);
    let unit_weights = [Scalar::one(), Scalar::from_int(-1)];
    let expanding = Scalar::from_int(2);
    for x in &xs {
        let l1 = exact(&norms::norm_finite(x, Space::L1).value);
        for n in (0..=100u64).step_by(7).chain([1, 100]) {
            // identity law, both kinds
            let b = apply_right_inverse(ShiftKind::Bounded, &expanding, n, x).unwrap();
            assert_eq!(apply_bounded(&expanding, n, &b), *x);
            let b = apply_right_inverse(ShiftKind::Unbounded, &expanding, n, x).unwrap();
            assert_eq!(apply_unbounded(&expanding, n, &b).unwrap(), *x);

            if n == 0 {
                continue;
            }
            // harmonic decay at |w| = 1
            for w in &unit_weights {
                let y = apply_right_inverse(ShiftKind::Bounded, w, n, x).unwrap();
                assert!(
                    norm_x(&y) <= rat_int(2) * &l1 / rat_int(n as i64 + 1),
                    "w = {w}, n = {n}"
                );
            }
            // geometric decay at |w| > 1, both kinds
            for kind in [ShiftKind::Bounded, ShiftKind::Unbounded] {
                let y = apply_right_inverse(kind, &expanding, n, x).unwrap();
                assert!(
                    norm_x(&y) <= pow_rat(&rat_int(2), -(n as i64)) * &l1,
                    "{kind:?}, n = {n}"
                );
            }
        }
    }
    report("criterion 05 right-inverse law and decay bounds (n <= 100, exact)");
}

/// Criterion 6: periodic point for base = e1 + 2 e2, N = 2, w = 2, M = 12.
/// The residual ||A_w^N value - value|| is computed exactly, equals
/// ||B_w^(MN) base||, and is at most 2^-24 ||base||_1.
#[test]
fn criterion_06_periodic_point() {
    let base = FiniteSeq::from_pairs([(1, Scalar::one()), (2, Scalar::from_int(2))]);
    let w = Scalar::from_int(2);
    let p = build_periodic_point(&base, 2, &w, ShiftKind::Bounded, 12).unwrap();
    let residual = exact(&p.residual);

    // independent evaluation of both sides
    let op = ShiftOp::new(ShiftKind::Bounded, w.clone(), 2).unwrap();
    let direct = norm_x(&op.apply(&p.value).unwrap().sub(&p.value));
    assert_eq!(residual, direct, "residual recomputed independently");
    let last = apply_right_inverse(ShiftKind::Bounded, &w, 24, &base).unwrap();
    assert_eq!(residual, norm_x(&last), "residual = ||B_w^(MN) base||");

    let l1 = exact(&norms::norm_finite(&base, Space::L1).value);
    assert_eq!(l1, rat_int(3));
    assert!(residual <= pow_rat(&rat_int(2), -24) * l1, "<= 2^-24 ||base||_1");
    report("criterion 06 periodic point (base = e1 + 2e2, N = 2, w = 2, M = 12)");
}

/// Criterion 7: orbit approximation. Three random targets, eps = 2^-10;
/// every directly evaluated ||A^(m_j) x - y_j|| is at most eps, exactly.
#[test]
fn criterion_07_orbit_approximation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EA1AB ^ 7);
    let params = SeqParams::default();
    let targets: Vec<FiniteSeq> = (0..3)
        .map(|_| generate::random_nonzero_seq(&mut rng, &params))
        .collect();
    let eps = pow_rat(&rat_int(2), -10);
    let w = Scalar::one(); // the |w| = 1 shift, where decay is harmonic
    let plan = plan_gaps(&targets, ShiftKind::Bounded, &w, &eps).unwrap();
    let orbit = build_orbit_vector(&plan, ShiftKind::Bounded, &w).unwrap();
    for (j, y) in targets.iter().enumerate() {
        let reached = apply_bounded(&w, plan.gaps[j], &orbit.vector);
        let err = norm_x(&reached.sub(y));
        assert!(err <= orbit.bounds[j], "target {j}: error within certificate");
        assert!(err <= eps, "target {j}: error <= 2^-10");
    }
    report("criterion 07 orbit approximation (3 random targets, eps = 2^-10, exact)");
}

/// Criterion 8: periodic-rigidity obstruction for (x_j, x_{j+1}) = (1, 2),
/// j = 1, N = 1. The exact partial sums exceed 1, 5, and 10 at finite,
/// reported indices.
#[test]
fn criterion_08_obstruction() {
    let x = FiniteSeq::from_pairs([(1, Scalar::one()), (2, Scalar::from_int(2))]);
    let mut last_index = 0u64;
    for thr in [1i64, 5, 10] {
        let witness = periodicity_obstruction(&x, 1, 1, &rat_int(thr)).unwrap();
        let sum = exact(&witness.partial_sum); // rational data: sums are exact
        assert!(sum > rat_int(thr), "threshold {thr} exceeded");
        assert!(witness.index >= last_index, "indices grow with the threshold");
        last_index = witness.index;
        println!(
            "[acceptance]   obstruction threshold {thr}: index {} (partial sum {})",
            witness.index,
            seqlab_core::scalar::to_decimal_string(&sum, 6)
        );
    }
    // independent brute force for the smallest threshold
    let mut acc = Rat::zero();
    let mut brute = 0u64;
    for k in 1u64.. {
        acc += (rat(2, (2 + k) as i64) - rat(1, (1 + k) as i64)).abs();
        if acc > Rat::one() {
            brute = k;
            break;
        }
    }
    let w1 = periodicity_obstruction(&x, 1, 1, &Rat::one()).unwrap();
    assert_eq!(w1.index, brute, "minimal index cross-checked by brute force");
    report("criterion 08 obstruction thresholds {1, 5, 10} at finite indices");
}

/// Criterion 9: eigen-recurrences, exactly to k = 200, plus the eigenvector
/// tail certificate below 2^-100 beyond k = 200.
#[test]
fn criterion_09_eigen_recurrences() {
    // bounded: lambda = 1/2, w = 1
    let lambda = Scalar::from_ratio(1, 2);
    let w = Scalar::one();
    let witness = eigvec_bounded(&lambda, &w);
    let SpectralEvidence::Eigenvector(v) = &witness.evidence else {
        panic!("expected an eigenvector for |lambda| < |w|");
    };
    let cert = check_eigen_recurrence(ShiftKind::Bounded, &lambda, &w, v, 200);
    assert!(cert.passed, "{cert}");

    // unbounded: lambda = 3, w = 2
    let lambda = Scalar::from_int(3);
    let w = Scalar::from_int(2);
    let witness = eigvec_unbounded(&lambda, &w).unwrap();
    let SpectralEvidence::Eigenvector(v) = &witness.evidence else {
        panic!("every scalar is an eigenvalue here");
    };
    let cert = check_eigen_recurrence(ShiftKind::Unbounded, &lambda, &w, v, 200);
    assert!(cert.passed, "{cert}");

    let family = LazySeq::eigvec_unbounded(lambda, w).unwrap();
    let tail = family.tail_bound(Space::X, 200).unwrap();
    assert!(tail < pow_rat(&rat_int(2), -100), "tail bound below 2^-100");
    assert!(tail.is_positive());
    report("criterion 09 eigen-recurrences exact to k = 200, tail < 2^-100");
}

/// Criterion 10: the Gelfand probe. The bracket for (n+1)^(1/n) at
/// n = 10^4 lies within [1, 1.01], in under 1 s.
#[test]
fn criterion_10_gelfand_probe() {
    let start = Instant::now();
    let bracket = spectral::radius_bracket(10_000, 16);
    assert!(bracket.lo() >= &Rat::one());
    assert!(bracket.hi() <= &rat(101, 100));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?} >= 1 s");
    report("criterion 10 Gelfand probe ((10001)^(1/10000) within [1, 1.01])");
}
