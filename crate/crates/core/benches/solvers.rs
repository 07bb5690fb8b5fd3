use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use posgame::geography::{samples, OptimalOracle};
use posgame::reduction::{reduce, Variant};
use posgame::solvers::{solve_mb, solve_mm, SolveOptions};
use posgame::strategies::{verify_mb_strategy, VerifyOptions};
use posgame::Player;

fn worker_counts() -> Vec<usize> {
    if cfg!(feature = "parallel") {
        vec![1, 4]
    } else {
        vec![1]
    }
}

fn solvers(c: &mut Criterion) {
    let g1 = reduce(&samples::cycle_alice(), Variant::Rank4).unwrap();
    let g2 = reduce(&samples::cycle_bob(), Variant::Rank4).unwrap();
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for workers in worker_counts() {
        let opts = SolveOptions { workers, ..Default::default() };
        group.bench_with_input(BenchmarkId::new("mb_cycle3", workers), &opts, |b, o| {
            b.iter(|| solve_mb(&g1.board, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("mb_cycle4", workers), &opts, |b, o| {
            b.iter(|| solve_mb(&g2.board, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("mm_cycle3", workers), &opts, |b, o| {
            b.iter(|| solve_mm(&g1.board, o).unwrap())
        });
    }
    group.finish();
}

fn verifier(c: &mut Criterion) {
    let inst = samples::nine_nodes();
    let red = reduce(&inst, Variant::Rank4).unwrap();
    let oracle = OptimalOracle::new(&inst).unwrap();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for workers in worker_counts() {
        let opts = VerifyOptions { budget: None, workers };
        group.bench_with_input(BenchmarkId::new("maker_nine_nodes", workers), &opts, |b, o| {
            b.iter(|| verify_mb_strategy(&red, Player::Maker, &oracle, o).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solvers, verifier);
criterion_main!(benches);
