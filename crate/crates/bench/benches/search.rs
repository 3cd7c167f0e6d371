use criterion::{black_box, criterion_group, criterion_main, Criterion};

use agmon_core::{
    automorphism_group, canonical_form, decode_table, enumerate_ag_monoids_bruteforce,
    enumerate_commutative_monoids, table1_row, EnumerationOptions,
};

fn example1() -> agmon_core::CayleyTable {
    decode_table("012345152340222332333333443344502341", 6).unwrap()
}

fn tables(c: &mut Criterion) {
    let m = example1();
    c.bench_function("canonical_form/order6", |b| {
        b.iter(|| canonical_form(black_box(&m), 0))
    });
    c.bench_function("automorphism_group/order6", |b| {
        b.iter(|| automorphism_group(black_box(&m)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    group.bench_function("commutative_monoids/order5", |b| {
        b.iter(|| enumerate_commutative_monoids(black_box(5)).unwrap())
    });
    group.bench_function("commutative_monoids/order6/sequential", |b| {
        b.iter(|| {
            agmon_core::enumeration::enumerate_commutative_monoids_with(
                6,
                &EnumerationOptions::with_workers(1),
            )
            .unwrap()
        })
    });
    group.bench_function("ag_bruteforce/order4", |b| {
        b.iter(|| enumerate_ag_monoids_bruteforce(black_box(4)).unwrap())
    });
    group.bench_function("table1_row/order6", |b| {
        b.iter(|| table1_row(black_box(6)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, tables, enumeration);
criterion_main!(benches);
