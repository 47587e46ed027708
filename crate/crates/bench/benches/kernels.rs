use criterion::{criterion_group, criterion_main, Criterion};
use qlogistic::entropy::lap_counts;
use qlogistic::{
    entropy_bisection, find_nonzero_fixed_points, lyapunov_turning, run_sweep, Axis, DeformedMap, Pattern,
    Quantity, SweepSpec,
};
use std::hint::black_box;

fn maps(c: &mut Criterion) {
    let m = DeformedMap::new(3.7, &[0.5, 3.0, 0.25]).unwrap();
    c.bench_function("jet", |b| b.iter(|| m.jet(black_box(0.3)).unwrap()));
    c.bench_function("fixed points", |b| b.iter(|| find_nonzero_fixed_points(black_box(&m)).unwrap()));
}

fn entropy(c: &mut Criterion) {
    let chaotic = DeformedMap::new(3.8, &[0.5]).unwrap();
    let cascade = DeformedMap::new(3.547262192513145, &[0.2260364490669276]).unwrap();
    c.bench_function("entropy bisection", |b| {
        b.iter(|| entropy_bisection(black_box(&chaotic), 1e-4, 10_000).unwrap())
    });
    c.bench_function("entropy bisection near cascade", |b| {
        b.iter(|| entropy_bisection(black_box(&cascade), 1e-4, 10_000).unwrap())
    });
    c.bench_function("lap counts n=14", |b| b.iter(|| lap_counts(black_box(&chaotic), 14).unwrap()));
    c.bench_function("lyapunov 10^4", |b| b.iter(|| lyapunov_turning(black_box(&chaotic), 10_000).unwrap()));
}

fn sweep(c: &mut Criterion) {
    let spec = SweepSpec::new(
        Pattern::Single,
        Quantity::Entropy,
        Axis::half_open(2.5, 3.0, 0.01).unwrap(),
        Axis::closed(3.55, 3.57, 0.001).unwrap(),
        None,
    );
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("entropy 50x21", |b| b.iter(|| run_sweep(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, maps, entropy, sweep);
criterion_main!(benches);
