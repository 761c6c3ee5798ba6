//! Benchmarks the agreement-battery sweep: the parallel driver against
//! the sequential fallback, over the rationals and a prime field, at
//! two instance-count scales. The workload is dominated by exact rank
//! computations on canonical-map matrices.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pwg_core::scalar::FieldSpec;
use pwg_core::suite::{run_suite_seq, SuiteConfig};

#[cfg(feature = "parallel")]
use pwg_core::suite::run_suite_par;

fn configs() -> Vec<(&'static str, SuiteConfig)> {
    vec![
        (
            "small-Q",
            SuiteConfig {
                field: FieldSpec::Rationals,
                max_group_order: 3,
                max_points: 3,
                fibred_max_fibers: 2,
                seed: 0,
            },
        ),
        (
            "medium-Q",
            SuiteConfig {
                field: FieldSpec::Rationals,
                max_group_order: 4,
                max_points: 5,
                fibred_max_fibers: 3,
                seed: 0,
            },
        ),
        (
            "small-F5",
            SuiteConfig {
                field: FieldSpec::PrimeField(5),
                max_group_order: 3,
                max_points: 3,
                fibred_max_fibers: 2,
                seed: 0,
            },
        ),
    ]
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (label, cfg) in configs() {
        group.bench_with_input(BenchmarkId::new("sequential", label), &cfg, |b, cfg| {
            b.iter(|| {
                let outcome = run_suite_seq(black_box(cfg));
                assert!(outcome.passed(), "sweep must stay clean while timing");
                outcome.counters.actions
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", label), &cfg, |b, cfg| {
            b.iter(|| {
                let outcome = run_suite_par(black_box(cfg));
                assert!(outcome.passed(), "sweep must stay clean while timing");
                outcome.counters.actions
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
