use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use taureg_core::ar::{is_tau_regular, tau};
use taureg_core::field::PolyBudget;
use taureg_core::fixtures::{alg_a_module, Fixture};
use taureg_core::present::{additivity_scan, generic_rank, min_presentation, HomSpace, ProjDecomp};
use taureg_core::rep::direct_sum;
use taureg_core::{Fp, Q};

fn ranks(c: &mut Criterion) {
    let a = Fixture::AlgA.algebra::<Q>().unwrap();
    let (p2, p3) = (ProjDecomp::single(3, 1), ProjDecomp::single(3, 2));
    let (p2x2, p3x2) = (ProjDecomp::new(vec![0, 2, 0]), ProjDecomp::new(vec![0, 0, 2]));
    c.bench_function("generic_rank P(2) -> P(3) over Q", |b| {
        b.iter(|| generic_rank(&a, black_box(&p2), &p3, 16, 42, &[]))
    });
    c.bench_function("generic_rank P(2)^2 -> P(3)^2 over Q", |b| {
        b.iter(|| generic_rank(&a, black_box(&p2x2), &p3x2, 8, 42, &[]))
    });
    let space = HomSpace::new(&a, &p2, &p3);
    let budget = PolyBudget::default();
    c.bench_function("symbolic rank P(2) -> P(3)", |b| b.iter(|| space.symbolic_rank(black_box(&budget))));

    let af = Fixture::AlgA.algebra::<Fp>().unwrap();
    c.bench_function("generic_rank P(2)^2 -> P(3)^2 over F_p", |b| {
        b.iter(|| generic_rank(&af, black_box(&p2x2), &p3x2, 8, 42, &[]))
    });

    let k = Fixture::AlgK.algebra::<Q>().unwrap();
    let (k1, k0) = (ProjDecomp::new(vec![1, 1]), ProjDecomp::new(vec![2, 1]));
    c.bench_function("additivity_scan Kronecker t <= 4", |b| {
        b.iter(|| additivity_scan(&k, black_box(&k1), &k0, 4, 8, 42))
    });
}

fn ar(c: &mut Criterion) {
    let a = Fixture::AlgA.algebra::<Q>().unwrap();
    let m = alg_a_module(&a);
    let mm = direct_sum(&a, &[m.clone(), m.clone()]);
    c.bench_function("min_presentation M + M", |b| b.iter(|| min_presentation(&a, black_box(&mm))));
    c.bench_function("tau M + M", |b| b.iter(|| tau(&a, black_box(&mm))));
    c.bench_function("is_tau_regular M + M", |b| b.iter(|| is_tau_regular(&a, black_box(&mm), 8, 42)));
}

criterion_group!(benches, ranks, ar);
criterion_main!(benches);
