use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rht_bench::random_matrix;
use rht_core::linalg::{kernel_basis_sparse, rank};

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [16, 32, 64] {
        let m = random_matrix(n, n + 4, 0.3, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rank(m)));
    }
    g.finish();

    let mut g = c.benchmark_group("kernel");
    for n in [16, 32, 64] {
        let m = random_matrix(n / 2, n, 0.3, 100 + n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| kernel_basis_sparse(m)));
    }
    g.finish();
}

criterion_group!(benches, linalg);
criterion_main!(benches);
