use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use resgraph::oracle::enumerate;
use resgraph::{canonical_cycle, fundamental_cycle_full, graphs, pa_max, run_all_checks, yau_sequence};
use resgraph_bench::{star, tailed_chain};

fn fundamental(c: &mut Criterion) {
    let mut group = c.benchmark_group("fundamental_cycle");
    group.bench_function("E8", |b| b.iter(|| fundamental_cycle_full(black_box(&graphs::e8())).unwrap()));
    for n in [10, 40] {
        let g = tailed_chain(n, -2, 1);
        group.bench_with_input(BenchmarkId::new("tailed_chain", n), &g, |b, g| {
            b.iter(|| fundamental_cycle_full(g).unwrap())
        });
    }
    group.finish();
}

fn yau(c: &mut Criterion) {
    let mut group = c.benchmark_group("yau_sequence");
    for n in [5, 20] {
        let g = tailed_chain(n, -2, 1);
        group.bench_with_input(BenchmarkId::new("tailed_chain", n), &g, |b, g| b.iter(|| yau_sequence(g).unwrap()));
    }
    let g = star(3, 3, -3, 2);
    group.bench_function("star_3x3", |b| b.iter(|| yau_sequence(&g).unwrap()));
    group.finish();
}

fn canonical(c: &mut Criterion) {
    let g = star(4, 6, -5, 2);
    c.bench_function("canonical_cycle/star_4x6", |b| b.iter(|| canonical_cycle(&g).unwrap()));
}

fn maximization(c: &mut Criterion) {
    let mut group = c.benchmark_group("pa_max");
    for genus in [3, 9] {
        let g = graphs::single(-1, genus);
        group.bench_with_input(BenchmarkId::new("single", genus), &g, |b, g| b.iter(|| pa_max(g, None).unwrap()));
    }
    let g = star(3, 2, -3, 3);
    group.bench_function("star_3x2_genus3", |b| b.iter(|| pa_max(&g, None).unwrap()));
    group.finish();
}

fn checks(c: &mut Criterion) {
    let g = star(2, 3, -2, 2);
    c.bench_function("run_all_checks/star_2x3", |b| b.iter(|| run_all_checks(&g).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("special_family_5", |b| {
        b.iter(|| enumerate::enumerate_and_verify(5, &[-3, -2, -1], &[0, 1, 2]).unwrap())
    });
    group.bench_function("oracle_family_3", |b| {
        b.iter(|| enumerate::oracle_equivalence(3, &[-2, -3], &[0, 1], 2).unwrap())
    });
    group.finish();
}

criterion_group!(benches, fundamental, yau, canonical, maximization, checks, enumeration);
criterion_main!(benches);
