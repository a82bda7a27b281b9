use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tightknot::inertia::hopf_tori;
use tightknot::{composite_inertia, gauss_linking, mc_inertia, McConfig, SegmentGrid};
use tightknot_bench::{hopf, query_points, trefoil};

fn exact_hopf(c: &mut Criterion) {
    let tori = hopf_tori(1.0, 1.0).unwrap();
    c.bench_function("composite_inertia/hopf", |b| b.iter(|| composite_inertia(black_box(&tori)).unwrap()));
}

fn linking(c: &mut Criterion) {
    let link = hopf();
    let [a, b] = link.components() else { unreachable!() };
    c.bench_function("gauss_linking/hopf_512", |bch| bch.iter(|| gauss_linking(black_box(a), black_box(b)).unwrap()));
}

fn grid_queries(c: &mut Criterion) {
    let link = trefoil();
    let grid = SegmentGrid::new(&link);
    let points = query_points(1024);
    c.bench_function("segment_grid/distance_1024", |b| {
        b.iter(|| points.iter().map(|p| grid.distance(p)).sum::<f64>())
    });
    c.bench_function("segment_grid/brute_force_1024", |b| {
        b.iter(|| points.iter().map(|p| grid.brute_force_distance(p)).sum::<f64>())
    });
}

fn monte_carlo(c: &mut Criterion) {
    let link = hopf();
    let mut group = c.benchmark_group("mc_inertia");
    group.sample_size(10);
    group.bench_function("hopf_1e5", |b| b.iter(|| mc_inertia(&link, &McConfig::new(42, 100_000)).unwrap()));
    group.finish();
}

criterion_group!(benches, exact_hopf, linking, grid_queries, monte_carlo);
criterion_main!(benches);
