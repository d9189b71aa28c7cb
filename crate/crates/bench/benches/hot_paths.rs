//! Benchmarks for the exact-arithmetic hot paths: dense elimination over the
//! rationals and a prime field, Kronecker products, one coherence-diagram
//! check, and a full idempotent-truncation build.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use modact::fixtures::{
    block_sum_idempotent, rep_module, sign_rep, standard_rep, symmetric_table, trivial_rep,
};
use modact::modcat::check_left_pentagon;
use modact::{
    group_algebra, group_hopf, regular_module, Field, LeftAction, Sampler, TruncationDatum,
};

fn dense_elimination(c: &mut Criterion) {
    let mut rational = Sampler::new(Field::Rational, 9001);
    let a = rational.matrix(24, 24);
    c.bench_function("echelonize 24x24 rational", |b| {
        b.iter(|| black_box(&a).echelonize())
    });

    let mut modular = Sampler::new(Field::Prime(10007), 9001);
    let m = modular.matrix(48, 48);
    c.bench_function("echelonize 48x48 mod 10007", |b| {
        b.iter(|| black_box(&m).echelonize())
    });
}

fn kronecker_product(c: &mut Criterion) {
    let mut s = Sampler::new(Field::Rational, 9002);
    let a = s.matrix(12, 12);
    let b2 = s.matrix(12, 12);
    c.bench_function("kronecker 12x12 rational", |b| {
        b.iter(|| black_box(&a).kronecker(black_box(&b2)).unwrap())
    });
}

fn pentagon_check(c: &mut Criterion) {
    let table = symmetric_table(3);
    let algebra = group_algebra(Field::Rational, &table);
    let ctx = group_hopf(&algebra, &table).unwrap();
    let act = LeftAction::strict(&ctx);
    let std = rep_module(&algebra, &standard_rep(3));
    let reg = regular_module(&algebra);

    // One associativity pentagon on the largest simple acting on the regular
    // module: three tensor constructions plus four morphism compositions.
    let report = check_left_pentagon(&act, &std, &std, &std, &reg).unwrap();
    assert!(report.pass);
    c.bench_function("pentagon std^3 on regular, group of order 6", |b| {
        b.iter(|| check_left_pentagon(black_box(&act), &std, &std, &std, &reg).unwrap())
    });
}

fn truncation_build(c: &mut Criterion) {
    let table = symmetric_table(3);
    let algebra = group_algebra(Field::Rational, &table);
    let ctx = group_hopf(&algebra, &table).unwrap();
    let reps = [
        (&trivial_rep(6), 1usize),
        (&sign_rep(3), 1),
        (&standard_rep(3), 1),
    ];
    let e = block_sum_idempotent(&algebra, &table, &reps).unwrap();

    // Full corner construction: fullness certificate, corner algebra, counit
    // and unit of the equivalence, and the three translated actions.
    let mut group = c.benchmark_group("truncation");
    group.sample_size(20);
    group.bench_function("basic corner of a 6-dim group algebra", |b| {
        b.iter(|| TruncationDatum::new(black_box(&ctx), black_box(&e)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    dense_elimination,
    kronecker_product,
    pentagon_check,
    truncation_build
);
criterion_main!(benches);
