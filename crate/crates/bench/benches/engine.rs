use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use symqca::index::{self, IntervalPair};
use symqca::modlin::{self, ModularSystem};
use symqca::{library, qca, sample, FiniteAbelianGroup, Interval};

fn bench_index(c: &mut Criterion) {
    let z2 = FiniteAbelianGroup::cyclic(2);
    let kw = qca::kw(&z2, 0).unwrap();
    let mut g = c.benchmark_group("index");
    g.bench_function("kw_z2_default", |b| b.iter(|| index::ind_default(black_box(&kw)).unwrap()));
    g.bench_function("d1_default", |b| {
        let d1 = library::d1();
        b.iter(|| index::ind_default(black_box(&d1)).unwrap())
    });
    for seg in [8u64, 16, 32] {
        let pair = IntervalPair::from_segments(0, seg, seg, seg).unwrap();
        g.bench_with_input(BenchmarkId::new("kw_z2_segment", seg), &pair, |b, p| {
            b.iter(|| index::ind(&kw, black_box(p)).unwrap())
        });
    }
    let placements = index::default_placements(kw.spread(), 5);
    g.bench_function("kw_z2_five_placements", |b| {
        b.iter(|| index::probe_global_invariance(&kw, black_box(&placements)).unwrap())
    });
    g.finish();
}

fn bench_apply(c: &mut Criterion) {
    let g = library::z2z2();
    let d1 = library::d1();
    let mut rng = sample::rng(1);
    let mut group = c.benchmark_group("apply");
    for len in [4i64, 16, 64] {
        let p = sample::symmetric_monomial(&mut rng, &g, Interval { lo: 0, hi: len - 1 });
        group.bench_with_input(BenchmarkId::new("d1", len), &p, |b, p| b.iter(|| d1.apply(black_box(p)).unwrap()));
    }
    let a = library::shift();
    let d2 = library::d2();
    group.bench_function("compose", |b| b.iter(|| qca::compose(black_box(&a), black_box(&d2)).unwrap()));
    group.bench_function("validate_d1", |b| b.iter(|| qca::validate(black_box(&d1))));
    group.finish();
}

fn bench_modlin(c: &mut Criterion) {
    let mut group = c.benchmark_group("modlin");
    for n in [20usize, 60, 120] {
        let mut rng = sample::rng(n as u64);
        let a: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..12)).collect())
            .collect();
        let sys = ModularSystem::homogeneous(a, vec![12; n], vec![12; n]).unwrap();
        group.bench_with_input(BenchmarkId::new("count_z12", n), &sys, |b, s| {
            b.iter(|| modlin::count_solutions(black_box(s)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_index, bench_apply, bench_modlin);
criterion_main!(benches);
