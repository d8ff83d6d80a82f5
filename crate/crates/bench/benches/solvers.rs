use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use olsrec_bench::noiseless_instance;
use olsrec_core::certificates::erc_omp;
use olsrec_core::solvers::{ols_solve, omp_solve};
use olsrec_core::SolverOptions;

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_solve");
    for &(n, m, k) in &[(50usize, 100usize, 4usize), (100, 256, 8), (200, 512, 16)] {
        let inst = noiseless_instance(n, m, k, 7);
        let opts = SolverOptions::default();
        group.bench_with_input(
            BenchmarkId::new("ols", format!("{}x{}_k{}", n, m, k)),
            &inst,
            |b, inst| b.iter(|| ols_solve(black_box(inst), &opts).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("omp", format!("{}x{}_k{}", n, m, k)),
            &inst,
            |b, inst| b.iter(|| omp_solve(black_box(inst), &opts).unwrap()),
        );
    }
    group.finish();
}

fn bench_certificates(c: &mut Criterion) {
    let inst = noiseless_instance(100, 256, 8, 7);
    let support = inst.true_support().unwrap();
    c.bench_function("erc_omp_100x256_k8", |b| {
        b.iter(|| erc_omp(black_box(&inst.h), black_box(&support)).unwrap())
    });
}

criterion_group!(benches, bench_solvers, bench_certificates);
criterion_main!(benches);
