use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latcon_bench::{named, pentagon, small_corpus};
use latcon_core::catalog::{enumerate_up_to, m3};
use latcon_core::glue::isolated_interval;
use latcon_core::sd::check_meet_sd_ideals;
use latcon_core::{all_congruences, check_sd_direct, double_antichain, glue};
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [6, 7, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_up_to(black_box(n))));
    }
    g.finish();
}

fn congruences(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_congruences");
    for l in named() {
        g.bench_function(l.name().to_owned(), |b| b.iter(|| all_congruences(black_box(&l))));
    }
    g.finish();
}

fn semidistributivity(c: &mut Criterion) {
    let lattices = small_corpus(7);
    c.bench_function("sd_direct/corpus7", |b| {
        b.iter(|| lattices.iter().filter(|l| check_sd_direct(l).is_semidistributive()).count())
    });
    c.bench_function("sd_ideals/corpus7", |b| b.iter(|| lattices.iter().filter(|l| check_meet_sd_ideals(l).0).count()));
}

fn constructions(c: &mut Criterion) {
    let l = pentagon();
    let iv = isolated_interval(&l, "a", "b").expect("isolated");
    let f = m3();
    c.bench_function("glue/n5_m3", |b| b.iter(|| glue(black_box(&l), &iv, &f)));
    c.bench_function("double/n5_ac", |b| b.iter(|| double_antichain(black_box(&l), &["a", "c"])));
}

criterion_group!(benches, enumeration, congruences, semidistributivity, constructions);
criterion_main!(benches);
