use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use std::hint::black_box;

use cubesum_core::scan::scan;
use cubesum_core::{dim_selmer_closed, dim_selmer_direct, factor_two_primes, search_cube_sum, split_prime};

// one value per splitting pattern: both inert, one split, both split
const SAMPLES: [u64; 3] = [262, 14, 21_691];

fn selmer(c: &mut Criterion) {
    let mut g = c.benchmark_group("selmer");
    for n in SAMPLES {
        let p = factor_two_primes(&BigInt::from(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("closed", n), &p, |b, p| b.iter(|| dim_selmer_closed(black_box(p))));
        g.bench_with_input(BenchmarkId::new("direct", n), &p, |b, p| b.iter(|| dim_selmer_direct(black_box(p))));
    }
    g.finish();
}

fn profile(c: &mut Criterion) {
    c.bench_function("factor_two_primes/470499481", |b| {
        let n = BigInt::from(470_499_481u64);
        b.iter(|| factor_two_primes(black_box(&n)))
    });
    c.bench_function("split_prime/1000003", |b| {
        let ell = BigInt::from(1_000_003u64);
        b.iter(|| split_prime(black_box(&ell), None))
    });
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("n=20,bound=10", |b| b.iter(|| search_cube_sum(black_box(&BigInt::from(20)), 10)));
    g.bench_function("n=14,bound=200", |b| b.iter(|| search_cube_sum(black_box(&BigInt::from(14)), 200)));
    g.finish();
}

fn scan_bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan");
    g.sample_size(10);
    g.bench_function("max_prime=50", |b| b.iter(|| scan(black_box(50), 1)));
    g.finish();
}

criterion_group!(benches, selmer, profile, search, scan_bench);
criterion_main!(benches);
