//! Compares the data-parallel sweep against the sequential fallback.
//!
//! Build with the default `parallel` feature and the sweep fans chunks out
//! to a thread pool whose size is the `jobs` argument; build with
//! `--no-default-features` and the same call runs the plain sequential
//! loop, so the two configurations bench the two implementations honestly.
//! The certification benches size the per-instance work the sweep repeats
//! millions of times.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorful_paths::coloring::Coloring;
use colorful_paths::generate::{cycle, petersen};
use colorful_paths::oracle::sweep_small_graphs;
use colorful_paths::{certify_all, find_proper_coloring};

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_n6_chi3");
    group.sample_size(10);
    for jobs in [1usize, 2, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(jobs), &jobs, |b, &jobs| {
            b.iter(|| {
                let s = sweep_small_graphs(black_box(6), 3, Some(jobs));
                assert!(s.discrepancies.is_empty());
                s.solved
            })
        });
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let g = petersen();
    let three = Coloring::new(3, vec![1, 2, 1, 2, 3, 2, 1, 3, 3, 2]);
    c.bench_function("certify_petersen_3color_directed", |b| {
        b.iter(|| certify_all(black_box(&g), black_box(&three)).certified_count())
    });

    let c25 = cycle(25);
    let c25_coloring = find_proper_coloring(&c25, 3, 1).unwrap();
    c.bench_function("certify_c25_3color_directed", |b| {
        b.iter(|| certify_all(black_box(&c25), black_box(&c25_coloring)).certified_count())
    });

    // A four-color instance goes through the generic backtracking search
    // instead of the directed two-path shortcut.
    let k4ish = colorful_paths::generate::complete(4);
    let four = Coloring::new(4, vec![1, 2, 3, 4]);
    c.bench_function("certify_k4_4color_generic", |b| {
        b.iter(|| certify_all(black_box(&k4ish), black_box(&four)).certified_count())
    });
}

criterion_group!(benches, bench_sweep, bench_certify);
criterion_main!(benches);
