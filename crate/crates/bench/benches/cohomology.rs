use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leibniz_core::algebra::adjoint_bimodule;
use leibniz_core::catalog::simple_leibniz_sl2;
use leibniz_core::cochain::{coboundary_matrix, graded_submatrix};
use leibniz_core::cohomology::{graded_cohomology, GradedCocycles};
use leibniz_core::linalg::{modular_rank, rank};
use leibniz_core::verify::{verify_m, VerifyOptions};

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("coboundary_d2");
    for m in [4, 8, 12] {
        let (a, _) = simple_leibniz_sl2(m).unwrap();
        let adj = adjoint_bimodule(&a);
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| {
            b.iter(|| coboundary_matrix(black_box(&a), &adj, 2).unwrap())
        });
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_d2");
    for m in [4, 8] {
        let (a, _) = simple_leibniz_sl2(m).unwrap();
        let d2 = coboundary_matrix(&a, &adjoint_bimodule(&a), 2).unwrap();
        group.bench_with_input(BenchmarkId::new("exact", m), &d2, |b, d| b.iter(|| rank(black_box(d))));
        group.bench_with_input(BenchmarkId::new("modular", m), &d2, |b, d| b.iter(|| modular_rank(black_box(d))));
    }
    let (a, g) = simple_leibniz_sl2(12).unwrap();
    let d2 = coboundary_matrix(&a, &adjoint_bimodule(&a), 2).unwrap();
    let block = graded_submatrix(&d2, &g, &g, 2, -1).unwrap();
    group.bench_function("exact_degree_-1_m12", |b| b.iter(|| rank(black_box(&block))));
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    let (a, g) = simple_leibniz_sl2(8).unwrap();
    group.bench_function("graded_cohomology_m8", |b| b.iter(|| graded_cohomology(black_box(&a), &g, 2).unwrap()));
    group.bench_function("graded_cocycles_m8", |b| b.iter(|| GradedCocycles::compute(black_box(&a), &g).unwrap()));
    group.bench_function("verify_m8", |b| b.iter(|| verify_m(black_box(8), &VerifyOptions::default())));
    group.finish();
}

criterion_group!(benches, assembly, ranks, pipeline);
criterion_main!(benches);
