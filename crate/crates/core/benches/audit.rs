//! Parallel against sequential execution of the independent-job workloads:
//! pairwise gcd audits, the identity catalog and the F scan.
//!
//! `sequential` pins the pool to one worker; `parallel` uses the default pool
//! (or `TODA_WORKERS`). Built without the `parallel` feature both variants run
//! the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toda_core::audit::{audit_pairwise_coprime, default_region, Region};
use toda_core::evolve::{periodic_symbolic, semi_infinite_symbolic, BoundaryKind, Rule, SymbolicGrid};
use toda_core::identity::{scan_f_positivity, verify_catalog, VerifyOptions};
use toda_core::par::{requested_workers, with_workers};

fn modes() -> [(&'static str, Option<usize>); 2] {
    [("sequential", Some(1)), ("parallel", requested_workers())]
}

fn evolved(mut s: SymbolicGrid, t: usize) -> SymbolicGrid {
    s.grid.evolve(t).expect("Laurent evolution");
    s
}

fn pairwise(c: &mut Criterion) {
    let semi = evolved(semi_infinite_symbolic(4, false, Rule::Standard).unwrap(), 7);
    let periodic = evolved(periodic_symbolic(3).unwrap(), 5);
    let cases = [
        ("semi-D4", &semi, Region::Diamond { k: 4 }),
        ("periodic-N3-t5", &periodic, default_region(BoundaryKind::Periodic(3), 3, 5)),
    ];
    let mut group = c.benchmark_group("pairwise-coprime");
    group.sample_size(10);
    for (label, s, region) in cases {
        for (mode, workers) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, label), &region, |b, region| {
                b.iter(|| with_workers(workers, || audit_pairwise_coprime(&s.grid, region, &s.registry)))
            });
        }
    }
    group.finish();
}

fn catalog(c: &mut Criterion) {
    let opts = VerifyOptions { trials: 3, seed: 0 };
    let mut group = c.benchmark_group("identity-catalog");
    group.sample_size(10);
    for (mode, workers) in modes() {
        group.bench_function(mode, |b| b.iter(|| with_workers(workers, || verify_catalog(Some(3), &opts).unwrap())));
    }
    group.finish();
}

fn f_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("f-scan-200");
    for (mode, workers) in modes() {
        group.bench_function(mode, |b| b.iter(|| with_workers(workers, || scan_f_positivity(200).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, pairwise, catalog, f_scan);
criterion_main!(benches);
