use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symcay_bench::graph;
use symcay_core::cuts::{
    build_cycle_neighborhood_cut, is_cyclic_cut, min_cut_exhaustive, randomized_cut_falsifier,
    vertex_connectivity, ConnectivityMode, CutKind, SearchOptions,
};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for spec in ["mb:5", "mb:6", "ug:7:c=4"] {
        group.bench_function(spec, |b| b.iter(|| graph(black_box(spec))));
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let g = graph("mb:4");
    let mut group = c.benchmark_group("exhaustive/mb:4");
    group.sample_size(10);
    for (name, kind) in [
        ("cyclic", CutKind::Cyclic),
        ("good-neighbor-2", CutKind::GoodNeighbor(2)),
    ] {
        for workers in [1, 4] {
            let opts = SearchOptions { workers };
            group.bench_with_input(BenchmarkId::new(name, workers), &opts, |b, opts| {
                b.iter(|| min_cut_exhaustive(g.graph(), kind, 8, opts).unwrap())
            });
        }
    }
    group.finish();
}

fn flow(c: &mut Criterion) {
    let mut group = c.benchmark_group("connectivity");
    for spec in ["mb:5", "mb:6"] {
        let g = graph(spec);
        group.bench_function(spec, |b| {
            b.iter(|| vertex_connectivity(g.graph(), ConnectivityMode::FixedSource).unwrap())
        });
    }
    group.finish();
}

fn cycle_cut(c: &mut Criterion) {
    let mut group = c.benchmark_group("cycle-cut");
    for spec in ["mb:6", "ug:7:c=4"] {
        let g = graph(spec);
        let cycle = g.enumerate_4cycles()[0];
        group.bench_function(spec, |b| {
            b.iter(|| {
                let f = build_cycle_neighborhood_cut(g.graph(), black_box(&cycle)).unwrap();
                is_cyclic_cut(g.graph(), &f)
            })
        });
    }
    group.finish();
}

fn falsifier(c: &mut Criterion) {
    let g = graph("ug:5:c=4");
    let mut group = c.benchmark_group("falsify/ug:5");
    group.measurement_time(Duration::from_secs(10));
    group.bench_function("10k-trials", |b| {
        b.iter(|| randomized_cut_falsifier(g.graph(), 11, 10_000, black_box(7), 1).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    construction,
    exhaustive,
    flow,
    cycle_cut,
    falsifier
);
criterion_main!(benches);
