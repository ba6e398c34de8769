//! Sequential against parallel execution of the data-parallel loops.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorcomp::counting::fill_table;
use colorcomp::par::Execution;
use colorcomp::sequences::ColorFamily;
use colorcomp::series::series_from_family;

fn table_fill(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_fill");
    group.sample_size(10);
    let family = ColorFamily::catalan();
    for n_max in [100u64, 300] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(
                BenchmarkId::new(format!("{exec:?}"), n_max),
                &n_max,
                |b, &n| b.iter(|| fill_table(black_box(&family), n, exec)),
            );
        }
    }
    group.finish();
}

fn series_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_pow");
    group.sample_size(10);
    let base = series_from_family(&ColorFamily::matrix(3).unwrap(), 400);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| black_box(&base).pow_with(20, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, table_fill, series_power);
criterion_main!(benches);
