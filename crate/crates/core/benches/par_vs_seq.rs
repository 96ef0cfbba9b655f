//! Sequential vs parallel timings for the two fan-out-heavy workloads:
//! root-split solving of the blocking check, and the exhaustive pair sweep
//! of the composition harness. Verdicts are identical in both modes; only
//! wall time differs. Without the `parallel` feature the "parallel" series
//! degrades to sequential and the two curves coincide.

use criterion::{criterion_group, criterion_main, Criterion};
use mlcol_core::exec::Parallelism;
use mlcol_core::gadget::{check_blocking, check_composition, CompositionMode};
use mlcol_core::solver::{Budget, SolverConfig};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn bench_blocking(c: &mut Criterion) {
    let mut group = c.benchmark_group("blocking-m1");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let cfg = SolverConfig::budgeted(Budget::UNLIMITED).with_parallelism(mode);
                check_blocking(1, &cfg).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_composition_fanout(c: &mut Criterion) {
    let mut group = c.benchmark_group("composition-m1-exhaustive");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let cfg = SolverConfig::budgeted(Budget::UNLIMITED).with_parallelism(mode);
                check_composition(1, CompositionMode::Exhaustive, 1_000, &cfg).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_blocking, bench_composition_fanout);
criterion_main!(benches);
