use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use entdist::par::Execution;
use entdist::protocols::{search_violation_with, sweep_with, Axis, Residual, Scenario, SweepGrid};

const MODES: [(&str, Execution); 2] = [
    ("parallel", Execution::Parallel),
    ("sequential", Execution::Sequential),
];

fn ame_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("ame_sweep");
    group.sample_size(10);
    for step in [0.1, 0.05, 0.02] {
        let grid = SweepGrid::new(vec![Axis::unit("q", step).unwrap()]);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, grid.len()), &grid, |b, grid| {
                b.iter(|| sweep_with(grid, Scenario::Ame, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn violation_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("violation_search");
    group.sample_size(10);
    for trials in [500u64, 2000, 8000] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, trials), &trials, |b, &trials| {
                b.iter(|| search_violation_with(3, trials, 1, Residual::Theorem1, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, ame_sweep, violation_search);
criterion_main!(benches);
