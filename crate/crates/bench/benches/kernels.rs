//! Hot-path kernels: coefficient convolution, FFT partial-sum evaluation,
//! the direct phasor oracle, and the node-block builder.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use nullseries_core::oracle::direct_partial_sum;
use nullseries_core::{
    build_h, coeff_convolve, grid_size_for, partial_sum_eval, CoeffSeq, PrecisionContext,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_seq(rng: &mut StdRng, degree: usize) -> CoeffSeq {
    let entries: Vec<Complex64> = (0..2 * degree + 1)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CoeffSeq::from_entries(entries).expect("odd length")
}

fn bench_convolve(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    let mut group = c.benchmark_group("coeff_convolve");
    for degree in [64usize, 256, 1024] {
        let a = random_seq(&mut rng, degree);
        let b = random_seq(&mut rng, degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &degree, |bench, _| {
            bench.iter(|| coeff_convolve(std::hint::black_box(&a), std::hint::black_box(&b)))
        });
    }
    group.finish();
}

fn bench_partial_sum_eval(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(2);
    let mut group = c.benchmark_group("partial_sum_eval");
    for degree in [256usize, 1024, 4096] {
        let seq = random_seq(&mut rng, degree);
        let grid = grid_size_for(degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &degree, |bench, _| {
            bench.iter(|| partial_sum_eval(std::hint::black_box(&seq), degree, grid))
        });
    }
    group.finish();
}

fn bench_direct_oracle(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(3);
    let seq = random_seq(&mut rng, 1024);
    c.bench_function("direct_partial_sum deg 1024", |bench| {
        bench.iter(|| direct_partial_sum(std::hint::black_box(&seq), 1024, 0.3217))
    });
}

fn bench_build_h(c: &mut Criterion) {
    let ctx = PrecisionContext::new(53);
    let mut group = c.benchmark_group("build_h");
    group.sample_size(10);
    for eps in [0.25f64, 0.125] {
        group.bench_with_input(BenchmarkId::from_parameter(eps), &eps, |bench, &e| {
            bench.iter(|| build_h(std::hint::black_box(e), &ctx))
        });
    }
    group.finish();
}

criterion_group!(
    kernels,
    bench_convolve,
    bench_partial_sum_eval,
    bench_direct_oracle,
    bench_build_h
);
criterion_main!(kernels);
