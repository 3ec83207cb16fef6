use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use incomp_core::corpus::{saddle_pair, tripod, Variant};
use incomp_core::{decide, enumerate_polygons, reduce_to_standard};
use std::hint::black_box;

fn decide_families(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    for n in [1, 3, 5] {
        let s = saddle_pair(n, Variant::Original).unwrap();
        g.bench_with_input(BenchmarkId::new("saddle-pair", n), &s, |b, s| b.iter(|| decide(black_box(s))));
    }
    for n in [2, 4] {
        let s = tripod(n).unwrap();
        g.bench_with_input(BenchmarkId::new("tripod", n), &s, |b, s| b.iter(|| decide(black_box(s))));
    }
    let s = saddle_pair(3, Variant::Doubled).unwrap();
    g.bench_function("doubled/3", |b| b.iter(|| decide(black_box(&s))));
    g.finish();
}

fn polygons(c: &mut Criterion) {
    let mut g = c.benchmark_group("polygons");
    for n in [1, 3, 5] {
        let s = saddle_pair(n, Variant::Original).unwrap();
        g.bench_with_input(BenchmarkId::new("saddle-pair", n), &s, |b, s| b.iter(|| enumerate_polygons(black_box(s))));
    }
    g.finish();
}

fn reduce(c: &mut Criterion) {
    let s = saddle_pair(3, Variant::Raw).unwrap();
    c.bench_function("reduce/raw-3", |b| b.iter(|| reduce_to_standard(black_box(&s))));
}

criterion_group!(benches, decide_families, polygons, reduce);
criterion_main!(benches);
