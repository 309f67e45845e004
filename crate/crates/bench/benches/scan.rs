use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use halfscan::{approx_max_halfspace, exact_max_halfspace, ApproxParams, PhiSpec};
use halfscan_bench::uniform_points;
use std::hint::black_box;

fn exact(c: &mut Criterion) {
    let spec = PhiSpec::discrepancy();
    let mut g = c.benchmark_group("exact_sweep");
    g.sample_size(10);
    for m in [250, 500, 1000] {
        let points = uniform_points(m, 0.5, 3);
        g.bench_with_input(BenchmarkId::from_parameter(m), &points, |b, pts| {
            b.iter(|| exact_max_halfspace(black_box(pts), &spec).unwrap())
        });
    }
    g.finish();
}

fn approx(c: &mut Criterion) {
    let spec = PhiSpec::discrepancy();
    let points = uniform_points(20_000, 0.5, 4);
    let mut g = c.benchmark_group("approx_scan_m2e4");
    g.sample_size(10);
    for eps in [0.2, 0.1, 0.05] {
        g.bench_with_input(BenchmarkId::from_parameter(eps), &eps, |b, &eps| {
            b.iter(|| approx_max_halfspace(black_box(&points), &spec, eps, 0.1, ApproxParams::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, exact, approx);
criterion_main!(benches);
