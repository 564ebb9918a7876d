//! Sequential against parallel execution on the data-parallel hot spots.
//! Without the `parallel` feature both variants run on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use arrangements::arrangement::{build_intersection_poset, diagonal_arrangement, Arrangement};
use arrangements::gm::{gm_report, graded_ring_table, Orientation};
use arrangements::linalg::{Gaussian, Rational};
use arrangements::os::os_algebra;
use arrangements::real::salvetti_census;
use arrangements::{ComputeOptions, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn opts(execution: Execution) -> ComputeOptions {
    ComputeOptions { execution, ..ComputeOptions::default() }
}

fn gm(c: &mut Criterion) {
    let mut group = c.benchmark_group("gm_report");
    group.sample_size(10);
    for n in [4, 5] {
        let arr = diagonal_arrangement::<Gaussian>(n, 2).unwrap().realify();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("A({n},2)")), &arr, |b, arr| {
                b.iter(|| gm_report(black_box(arr), opts(exec)).unwrap())
            });
        }
    }
    group.finish();
}

fn ring(c: &mut Criterion) {
    let mut group = c.benchmark_group("graded_ring_table");
    group.sample_size(10);
    let complex = diagonal_arrangement::<Gaussian>(4, 2).unwrap();
    let poset = build_intersection_poset(&complex.realify());
    let orientation = Orientation::complex(&complex, &poset);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "A(4,2)"), |b| {
            b.iter(|| graded_ring_table(black_box(&poset), &orientation, opts(exec)).unwrap())
        });
    }
    group.finish();
}

fn os(c: &mut Criterion) {
    let mut group = c.benchmark_group("os_algebra");
    group.sample_size(10);
    let arr = diagonal_arrangement::<Rational>(5, 2).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "A(5,2)"), |b| b.iter(|| os_algebra(black_box(&arr), exec).unwrap()));
    }
    group.finish();
}

fn salvetti(c: &mut Criterion) {
    let mut group = c.benchmark_group("salvetti_census");
    group.sample_size(10);
    // eight lines t x + t^2 y = 1 in general position
    let rows: Vec<Vec<i64>> = (1..=8).map(|t| vec![t, t * t, 1]).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let arr = Arrangement::<Rational>::from_i64_hyperplanes(2, &refs).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "8 lines"), |b| b.iter(|| salvetti_census(black_box(&arr), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, gm, ring, os, salvetti);
criterion_main!(benches);
