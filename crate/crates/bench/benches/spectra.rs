use std::hint::black_box;

use boolfn_core::spectra::autocorrelation_at;
use boolfn_core::{exhaustive_report, summarize, wht_fast, BooleanFunction};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn wht(c: &mut Criterion) {
    let mut group = c.benchmark_group("wht_fast");
    for m in [8u32, 12, 16, 20] {
        let f = BooleanFunction::random_uniform(m, 1, 0).unwrap().sign();
        group.throughput(Throughput::Elements(1 << m));
        group.bench_with_input(BenchmarkId::from_parameter(m), &f, |b, f| {
            b.iter(|| wht_fast(black_box(f)))
        });
    }
    group.finish();
}

fn summary(c: &mut Criterion) {
    let mut group = c.benchmark_group("summarize");
    for m in [10u32, 16] {
        let g = BooleanFunction::random_uniform(m, 1, 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| {
            b.iter(|| summarize(black_box(g)))
        });
    }
    group.finish();
}

fn single_shift(c: &mut Criterion) {
    let mut group = c.benchmark_group("autocorrelation_at");
    for m in [10u32, 16] {
        let g = BooleanFunction::random_uniform(m, 1, 0).unwrap();
        let a = (1usize << m) - 3;
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| {
            b.iter(|| autocorrelation_at(black_box(g), a))
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("exhaustive_report/3", |b| {
        b.iter(|| exhaustive_report(black_box(3)).unwrap())
    });
}

criterion_group!(benches, wht, summary, single_shift, enumeration);
criterion_main!(benches);
