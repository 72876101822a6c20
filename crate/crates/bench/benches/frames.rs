use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use framelab_bench::{fixture, frame, paley};
use framelab_core::difference::classify;
use framelab_core::FrameSpec;

fn angle_profiles(c: &mut Criterion) {
    let mut group = c.benchmark_group("angle_profile");
    for p in [13u32, 61, 241, 1021] {
        let (g, s) = paley(p);
        let f = FrameSpec::new(&g, &s).unwrap();
        group.bench_with_input(BenchmarkId::new("paley", p), &f, |b, f| b.iter(|| black_box(f).angle_profile()));
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let cases = [("Z6", "0,1,3"), ("Z9", "0,1,3,4"), ("Z2xZ4", "(0,0),(1,0),(0,1)"), ("Z2xZ2xZ2xZ2", "(0,0,0,0),(1,0,0,0),(0,1,0,0),(0,0,1,0),(0,0,0,1),(1,1,1,1)")];
    let mut group = c.benchmark_group("classify");
    for (g, s) in cases {
        let (g, s) = fixture(g, s);
        group.bench_function(format!("{g}"), |b| b.iter(|| classify(black_box(&g), black_box(&s)).unwrap()));
    }
    let (g, s) = paley(61);
    group.bench_function("paley_61", |b| b.iter(|| classify(black_box(&g), black_box(&s)).unwrap()));
    group.finish();
}

fn identities(c: &mut Criterion) {
    let f = frame("Z12", "0,1,3,7");
    c.bench_function("modulation_identities_z12", |b| b.iter(|| black_box(&f).verify_modulation_identities().unwrap()));
    c.bench_function("tightness_z12", |b| b.iter(|| black_box(&f).verify_tightness().unwrap()));
}

criterion_group!(benches, angle_profiles, classification, identities);
criterion_main!(benches);
