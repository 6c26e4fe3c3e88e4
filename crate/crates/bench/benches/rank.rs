use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use corners::homology::{betti, rank_exact, rank_gf2, rank_modp, rank_rational};
use corners::Field;
use corners_bench::{random_sparse, small_cover};

fn sparse_ranks(c: &mut Criterion) {
    let mut g = c.benchmark_group("sparse");
    for n in [200usize, 1000, 3000] {
        let m = random_sparse(n, n, 4, n as u64);
        g.bench_with_input(BenchmarkId::new("gf2", n), &m, |b, m| b.iter(|| rank_gf2(m)));
        g.bench_with_input(BenchmarkId::new("modp", n), &m, |b, m| b.iter(|| rank_modp(m, 2_147_483_629)));
        g.bench_with_input(BenchmarkId::new("rational", n), &m, |b, m| b.iter(|| rank_rational(m)));
    }
    g.finish();
}

fn exact_rank(c: &mut Criterion) {
    let m = random_sparse(60, 60, 6, 7);
    c.bench_function("bareiss_60", |b| b.iter(|| rank_exact(&m)));
}

fn quotient_betti(c: &mut Criterion) {
    let mut g = c.benchmark_group("small_cover");
    g.sample_size(10);
    for name in ["dodecahedron", "lobell6"] {
        let cx = small_cover(name);
        g.bench_function(BenchmarkId::new("gf2", name), |b| b.iter(|| betti(&cx, Field::Gf2)));
        g.bench_function(BenchmarkId::new("rational", name), |b| b.iter(|| betti(&cx, Field::Rational)));
    }
    g.finish();
}

criterion_group!(benches, sparse_ranks, exact_rank, quotient_betti);
criterion_main!(benches);
