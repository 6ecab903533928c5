use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supportminors::estimator::{complexity_report, ParameterSet};
use supportminors::linearization::solve_linearization;
use supportminors::macaulay::macaulay;
use supportminors::minrank::{brute_force_solve, DEFAULT_ENUMERATION_CAP};
use supportminors::syzygy::sprime_span;
use supportminors_bench::{planted, random, SHAPES};

fn label(s: &(usize, usize, usize, usize)) -> String {
    format!("m{}n{}r{}K{}", s.0, s.1, s.2, s.3)
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("macaulay_b2");
    for s in &SHAPES {
        let inst = random(s.0, s.1, s.2, s.3);
        g.bench_with_input(BenchmarkId::from_parameter(label(s)), &inst, |b, inst| {
            b.iter(|| macaulay(black_box(inst), 2).unwrap())
        });
    }
    g.finish();
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank_b2");
    for s in &SHAPES {
        let mac = macaulay(&random(s.0, s.1, s.2, s.3), 2).unwrap();
        g.bench_with_input(BenchmarkId::new("dense", label(s)), &mac, |b, mac| {
            b.iter(|| mac.matrix().to_dense().rank())
        });
        g.bench_with_input(BenchmarkId::new("markowitz", label(s)), &mac, |b, mac| {
            b.iter(|| mac.matrix().markowitz_rank())
        });
    }
    g.finish();
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    let inst = planted(32003, 4, 4, 2, 3);
    g.bench_function("linearization_b2_q32003", |b| {
        b.iter(|| solve_linearization(black_box(&inst), 2).unwrap())
    });
    let small = planted(7, 4, 4, 2, 3);
    g.bench_function("linearization_b2_q7", |b| {
        b.iter(|| solve_linearization(black_box(&small), 2).unwrap())
    });
    g.bench_function("brute_force_q7", |b| {
        b.iter(|| brute_force_solve(black_box(&small), 2, DEFAULT_ENUMERATION_CAP).unwrap())
    });
    g.finish();
}

fn syzygies(c: &mut Criterion) {
    let inst = random(4, 4, 2, 8);
    c.bench_function("sprime_span_m4n4r2K8", |b| {
        b.iter(|| sprime_span(black_box(&inst)).unwrap())
    });
}

fn estimate(c: &mut Criterion) {
    let p = ParameterSet::new(60, 60, 100, 30).unwrap();
    c.bench_function("estimate_m60n60r30K100", |b| {
        b.iter(|| complexity_report(black_box(&p)))
    });
}

criterion_group!(benches, build, rank, solve, syzygies, estimate);
criterion_main!(benches);
