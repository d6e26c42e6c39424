use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fdsrank_core::bounds::{entropy_h, max_code_size};
use fdsrank_core::canonical::refined_bound_lp;
use fdsrank_core::graph::fixtures;
use fdsrank_core::{canonicalize, enumerate_stats, minrank_exact, Limits};

fn enumeration(c: &mut Criterion) {
    let lim = Limits::default();
    let star = fixtures::star3();
    let k3 = fixtures::k3();
    c.bench_function("enumerate_stats STAR3 strict q=2", |b| {
        b.iter(|| enumerate_stats(black_box(&star), 2, true, &lim).unwrap())
    });
    c.bench_function("enumerate_stats K3 non-strict q=2", |b| {
        b.iter(|| enumerate_stats(black_box(&k3), 2, false, &lim).unwrap())
    });
    c.bench_function("minrank_exact STAR3 q=3", |b| b.iter(|| minrank_exact(black_box(&star), 3, &lim).unwrap()));
}

fn lattice(c: &mut Criterion) {
    let lim = Limits::default();
    let fig = canonicalize(&fixtures::fig1());
    let star = canonicalize(&fixtures::star(7));
    c.bench_function("refined lattice bound FIG1", |b| b.iter(|| refined_bound_lp(black_box(&fig), &lim).unwrap()));
    c.bench_function("refined lattice bound STAR7", |b| b.iter(|| refined_bound_lp(black_box(&star), &lim).unwrap()));
}

fn codes(c: &mut Criterion) {
    let lim = Limits::default();
    c.bench_function("code size A(5,2,3)", |b| b.iter(|| max_code_size(5, 2, Some(3), &lim).unwrap()));
    c.bench_function("code size A(4,3,3)", |b| b.iter(|| max_code_size(4, 3, Some(3), &lim).unwrap()));
}

fn entropy(c: &mut Criterion) {
    let lim = Limits::default();
    let c5 = fixtures::c5_sym();
    let c3 = fixtures::c3();
    c.bench_function("entropy LP C5sym", |b| b.iter(|| entropy_h(black_box(&c5), &lim).unwrap()));
    c.bench_function("entropy LP C3", |b| b.iter(|| entropy_h(black_box(&c3), &lim).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = enumeration, lattice, codes, entropy
}
criterion_main!(benches);
