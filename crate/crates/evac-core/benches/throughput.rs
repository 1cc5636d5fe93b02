//! Compares the default rayon pool against a one-thread pool on the two
//! heaviest data-parallel workloads: adversary certification for a large
//! team and the byzantine scenario sweep. The one-thread pool runs the same
//! parallel code path, so the gap is the parallel speedup (and on a single
//! hardware thread the two converge).

use criterion::{criterion_group, criterion_main, Criterion};
use evac_core::{adversary, byzantine, ScheduleParams};

fn pool_comparison(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("one-thread pool builds");

    let big = ScheduleParams::proportional(41, 3.0 + 2.0 * 2.0_f64.sqrt())
        .expect("legal parameters");
    let mut group = c.benchmark_group("certified-ratio-41-agents");
    group.bench_function("default-pool", |b| {
        b.iter(|| adversary::certified_ratio(&big, 3).expect("stabilized"))
    });
    group.bench_function("one-thread-pool", |b| {
        b.iter(|| single.install(|| adversary::certified_ratio(&big, 3).expect("stabilized")))
    });
    group.finish();

    let three = ScheduleParams::generalized(3, 6.833921, 1.518949, 1.699557)
        .expect("legal parameters");
    let mut group = c.benchmark_group("byzantine-sweep-100x100");
    group.sample_size(10);
    group.bench_function("default-pool", |b| {
        b.iter(|| byzantine::byz_competitive_ratio(&three, 100, 100).expect("sweep succeeds"))
    });
    group.bench_function("one-thread-pool", |b| {
        b.iter(|| {
            single.install(|| {
                byzantine::byz_competitive_ratio(&three, 100, 100).expect("sweep succeeds")
            })
        })
    });
    group.finish();
}

criterion_group!(benches, pool_comparison);
criterion_main!(benches);
