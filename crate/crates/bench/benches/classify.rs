use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orlicz_bench::{geometric_analysis, two_sided_analysis};
use orlicz_core::classify::exponent_estimates;
use orlicz_core::classify_all;

fn classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for horizon in [64, 256] {
        let half = geometric_analysis(0.5, horizon);
        group.bench_with_input(BenchmarkId::new("all/geometric", horizon), &half, |b, a| {
            b.iter(|| classify_all(black_box(a)))
        });
        let two = two_sided_analysis(horizon);
        group.bench_with_input(BenchmarkId::new("all/two_sided", horizon), &two, |b, a| {
            b.iter(|| classify_all(black_box(a)))
        });
        group.bench_with_input(BenchmarkId::new("exponents/two_sided", horizon), &two, |b, a| {
            b.iter(|| exponent_estimates(black_box(a)).unwrap())
        });
    }
    group.bench_function("analysis/two_sided", |b| b.iter(|| two_sided_analysis(black_box(256))));
    group.finish();
}

criterion_group!(benches, classify);
criterion_main!(benches);
