//! Sequential vs parallel execution of the batch kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncbell::bell::{bell, bell_explicit_with};
use ncbell::hopf::HopfAlgebra;
use ncbell::partitions::{max_ordered_census, q_weight_census, WeightReading};
use ncbell::{Exec, Word};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [
    ("Sequential", Exec::Sequential),
    ("Parallel", Exec::Parallel),
];

fn poly_mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("poly_mul");
    let a = bell::<Word>(9);
    let b = bell::<Word>(8);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "B9*B8"), |bn| {
            bn.iter(|| black_box(a.mul_with(&b, exec)))
        });
    }
    g.finish();
}

fn explicit_bell(c: &mut Criterion) {
    let mut g = c.benchmark_group("bell_explicit");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "B_{12,6}"), |bn| {
            bn.iter(|| black_box(bell_explicit_with(12, 6, exec)))
        });
    }
    g.finish();
}

fn partition_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("partitions");
    g.sample_size(10);
    let h = HopfAlgebra::<Word>::new();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "census n=10"), |bn| {
            bn.iter(|| black_box(max_ordered_census(10, exec).unwrap()))
        });
        g.bench_function(BenchmarkId::new(name, "q-weights n=9"), |bn| {
            bn.iter(|| black_box(q_weight_census(9, WeightReading::Displacement, exec).unwrap()))
        });
        g.bench_function(BenchmarkId::new(name, "coproduct oracle n=6"), |bn| {
            bn.iter(|| black_box(h.coproduct_oracle(6, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, poly_mul, explicit_bell, partition_kernels);
criterion_main!(benches);
