//! Parallel against sequential execution of the main kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::Rational64;

use sdcodes::data;
use sdcodes::gf2::DEFAULT_ENUMERATION_CAP;
use sdcodes::lattice::construct_la;
use sdcodes::selfdual::coset_weight_distribution_with;
use sdcodes::{BitMatrix, Execution};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Auto), ("sequential", Execution::Sequential)];

fn double_hamming() -> BitMatrix {
    let h: Vec<u64> = [0b1111_0000u64, 0b0011_1100, 0b0000_1111, 0b0101_0101]
        .iter()
        .flat_map(|&x| [x, x << 8])
        .collect();
    BitMatrix::from_packed(16, &h)
}

fn weight_distribution(c: &mut Criterion) {
    let code = data::extremal_doubly_even_40().unwrap();
    let g = code.generator().clone();
    let mut group = c.benchmark_group("weight_distribution_40");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| g.weight_distribution_with(DEFAULT_ENUMERATION_CAP, e).unwrap())
        });
    }
    group.finish();
}

fn coset_counts(c: &mut Criterion) {
    let g = double_hamming();
    let mut group = c.benchmark_group("coset_weight_distribution_16");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| coset_weight_distribution_with(&g, 4, e).unwrap())
        });
    }
    group.finish();
}

fn short_vectors(c: &mut Criterion) {
    let l = construct_la(&double_hamming()).unwrap();
    let bound = Rational64::from_integer(4);
    let mut group = c.benchmark_group("short_vectors_16");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| l.short_vectors(bound, e).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, weight_distribution, coset_counts, short_vectors);
criterion_main!(benches);
