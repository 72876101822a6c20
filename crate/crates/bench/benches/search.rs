use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use framelab_core::search::cross_group_angle_match;
use framelab_core::{tolerance, Filter, GroupSpec, SearchJob, SearchMode};

fn order_eight(c: &mut Criterion) {
    let target = [1.0 / 3.0, 5f64.sqrt() / 3.0];
    c.bench_function("cross_group_order8_m3", |b| {
        b.iter(|| cross_group_angle_match(8, 3, black_box(&target), tolerance::ANGLE_MATCH, 0).unwrap())
    });
}

fn widths(c: &mut Criterion) {
    let g: GroupSpec = "Z2xZ8".parse().unwrap();
    let mut group = c.benchmark_group("search_z2xz8_m5");
    group.sample_size(10);
    for jobs in [1usize, 4] {
        group.bench_with_input(BenchmarkId::new("jobs", jobs), &jobs, |b, &jobs| {
            b.iter(|| {
                SearchJob::new(&g, 5)
                    .mode(SearchMode::Full)
                    .filter(Filter::Btf)
                    .keep_records(false)
                    .jobs(jobs)
                    .run()
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, order_eight, widths);
criterion_main!(benches);
