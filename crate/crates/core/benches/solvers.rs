use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use atfp::atfree::find_asteroidal_triple_with;
use atfp::fuzz::{run_fuzz, FuzzConfig};
use atfp::gen::{gen_corridor, gen_random, Model};
use atfp::graph::families;
use atfp::idp::solve_idp_with;
use atfp::par::Exec;
use atfp::solvers::itm_with;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn idp(c: &mut Criterion) {
    let mut group = c.benchmark_group("idp");
    for n in [30, 60, 120] {
        let inst = gen_corridor(n, 5, 1).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &inst, |b, inst| {
                b.iter(|| solve_idp_with(black_box(inst), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("at-free check");
    for model in [Model::Interval, Model::Cobipartite] {
        let g = gen_random(model, 80, 1, 3).unwrap().g;
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, model), &g, |b, g| {
                b.iter(|| find_asteroidal_triple_with(black_box(g), exec))
            });
        }
    }
    group.finish();
}

fn minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("itm");
    let g = gen_random(Model::Permutation, 9, 1, 5).unwrap().g;
    let h = families::cycle(4);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| itm_with(black_box(&g), &h, 4, exec).unwrap()));
    }
    group.finish();
}

fn fuzzing(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz 40 trials");
    group.sample_size(10);
    for (name, exec) in MODES {
        let cfg = FuzzConfig { trials: 40, seed: 7, exec, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| run_fuzz(black_box(&cfg))));
    }
    group.finish();
}

criterion_group!(benches, idp, recognition, minors, fuzzing);
criterion_main!(benches);
