use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use zne_core::curve::{
    count_points_bsgs_threshold, count_points_naive_with, ChiTable, WModel,
};
use zne_core::field::Field;
use zne_core::fp::PrimeField;
use zne_core::kodaira::{analyze_fibers, reduce_model_mod_p, FpPlaces};
use zne_core::surfaces::surface;
use zne_core::zeta::count_fibration;

fn bench_curve_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("curve_count");
    for p in [521u64, 2003, 10007] {
        let f = PrimeField::new(p);
        let w = WModel::short(&f, f.from_i64(2), f.from_i64(3));
        let chi = ChiTable::build(&f);
        group.bench_with_input(BenchmarkId::new("naive", p), &p, |b, _| {
            b.iter(|| count_points_naive_with(&f, &w, &chi))
        });
        group.bench_with_input(BenchmarkId::new("bsgs", p), &p, |b, _| {
            b.iter(|| count_points_bsgs_threshold(&f, &w, 16))
        });
    }
    group.finish();
}

fn bench_fibration_count(c: &mut Criterion) {
    let s = surface(9, 1);
    let f = PrimeField::new(5);
    let w = reduce_model_mod_p(&s.model, 5).unwrap();
    let analysis = analyze_fibers(&FpPlaces { f }, &w);
    c.bench_function("fibration_count_z9_1_p5_r2", |b| {
        b.iter(|| count_fibration(&f, &w, &analysis, 2, 1 << 12))
    });
}

criterion_group!(benches, bench_curve_counts, bench_fibration_count);
criterion_main!(benches);
