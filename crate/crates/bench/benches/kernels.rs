//! Long-truncation kernels: the paths whose cost grows with the support
//! length or the truncation index.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use seqlab_bench::{corpus, dense_seq};
use seqlab_core::norms::{norm_finite, partial_norm_sum};
use seqlab_core::scalar::{rat, rat_int};
use seqlab_core::sum::pairwise_sum;
use seqlab_core::*;

fn bench_norms(c: &mut Criterion) {
    let x = dense_seq(4096);
    c.bench_function("weighted norm, dense support 4096", |b| {
        b.iter(|| norm_finite(black_box(&x), Space::X))
    });

    let sparse = corpus(1, 64);
    c.bench_function("weighted norm, suite corpus x64", |b| {
        b.iter(|| {
            for z in &sparse {
                black_box(norm_finite(z, Space::X));
            }
        })
    });
}

fn bench_iso(c: &mut Criterion) {
    let x = dense_seq(4096);
    let z = apply_iso(IsoMap::J, &x);
    c.bench_function("Jinv prefix sums, dense support 4096", |b| {
        b.iter(|| apply_iso(IsoMap::JInv, black_box(&z)))
    });
}

fn bench_conjugates(c: &mut Criterion) {
    let z = dense_seq(512);
    let op = ConjugateOp::new(ConjugateWhich::L1Unbounded, Scalar::from_int(2), 4).unwrap();
    c.bench_function("l1-unbounded conjugate, support 512, n = 4", |b| {
        b.iter(|| apply_conjugate(black_box(&op), black_box(&z)).unwrap())
    });

    let op_x = ConjugateOp::new(ConjugateWhich::XUnbounded, Scalar::from_int(2), 4).unwrap();
    c.bench_function("x-unbounded conjugate, support 512, n = 4", |b| {
        b.iter(|| apply_conjugate(black_box(&op_x), black_box(&z)).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    c.bench_function("harmonic pairwise sum to 20000", |b| {
        b.iter(|| pairwise_sum(&mut |k| rat(1, k as i64), 1, black_box(20_000)))
    });

    let geo = LazySeq::exponential(Scalar::from_ratio(2, 3));
    c.bench_function("exponential partial weighted norm to 10000", |b| {
        b.iter(|| partial_norm_sum(black_box(&geo), Space::X, 10_000, 64))
    });
}

fn bench_spectral(c: &mut Criterion) {
    c.bench_function("Gelfand bracket at n = 10^4, 16 bits", |b| {
        b.iter(|| spectral::radius_bracket(black_box(10_000), 16))
    });
}

fn bench_obstruction(c: &mut Criterion) {
    let x = FiniteSeq::from_pairs([(1, Scalar::one()), (2, Scalar::from_int(2))]);
    c.bench_function("obstruction crossing, threshold 5", |b| {
        b.iter(|| periodicity_obstruction(black_box(&x), 1, 1, &rat_int(5)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_norms,
    bench_iso,
    bench_conjugates,
    bench_series,
    bench_spectral,
    bench_obstruction
);
criterion_main!(benches);
