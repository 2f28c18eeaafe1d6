//! Runs each parallel kernel on a one-thread rayon pool and on the default pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use locgame::experiment::{self, ExperimentConfig};
use locgame::families;
use locgame::game::cops_win;
use locgame::resolve::metric_dimension_exact;
use locgame::tournament::e4c_count;
use locgame::all_pairs_distances;
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(String, ThreadPool)> {
    let default = ThreadPoolBuilder::new().build().unwrap();
    let label = format!("default_pool_{}", default.current_num_threads());
    vec![
        ("single_thread".to_string(), ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        (label, default),
    ]
}

fn kernels(c: &mut Criterion) {
    let pools = pools();

    let tight = families::sc_tight(3, 1).unwrap();
    let tight_dm = all_pairs_distances(&tight);
    let paley = families::paley_tournament(19).unwrap();
    let paley_dm = all_pairs_distances(&paley);
    let big = families::random_tournament(100, 0.5, 1).unwrap();
    let config = ExperimentConfig {
        n_values: vec![30],
        p: 0.5,
        trials: 8,
        seed: 1,
        epsilon: None,
    };

    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (label, pool) in &pools {
        group.bench_function(BenchmarkId::new("solver_sc_tight_3_1", label), |b| {
            b.iter(|| pool.install(|| cops_win(&tight, &tight_dm, 3).unwrap()))
        });
        group.bench_function(BenchmarkId::new("metric_dimension_paley_19", label), |b| {
            b.iter(|| pool.install(|| metric_dimension_exact(&paley, &paley_dm)))
        });
        group.bench_function(BenchmarkId::new("e4c_count_n100", label), |b| {
            b.iter(|| pool.install(|| e4c_count(&big)))
        });
        group.bench_function(BenchmarkId::new("distances_n100", label), |b| {
            b.iter(|| pool.install(|| all_pairs_distances(&big)))
        });
        group.bench_function(BenchmarkId::new("experiment_n30", label), |b| {
            b.iter(|| pool.install(|| experiment::run(&config).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
