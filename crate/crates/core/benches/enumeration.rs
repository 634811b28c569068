use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use paving_core::{collect_seeds, enumerate_all_matroids, enumerate_paving, Execution, Simplicity};

fn strategies() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    if paving_core::parallel::is_parallel_available() {
        out.push(("parallel", Execution::Parallel));
    }
    out
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for (n, r) in [(5, 2), (6, 3)] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("n{n}r{r}")), &(n, r), |b, &(n, r)| {
                b.iter(|| enumerate_all_matroids(black_box(n), black_box(r), Simplicity::None, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn seed_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("seed_search");
    group.sample_size(10);
    for (n, r) in [(6, 3), (7, 3)] {
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("n{n}r{r}")), &(n, r), |b, &(n, r)| {
                b.iter(|| collect_seeds(black_box(n), black_box(r), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn paving_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("paving_construction");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::new(name, "n6r3"), |b| {
            b.iter(|| enumerate_paving(black_box(6), black_box(3), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, brute_force, seed_search, paving_construction);
criterion_main!(benches);
