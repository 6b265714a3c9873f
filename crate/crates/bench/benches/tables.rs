use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use std::sync::Arc;

use hyplab_core::multivar::DiscTable;
use hyplab_core::polyfam::verify_hypergroup;
use hyplab_core::{build_table, FiniteHypergroup, Hypergroup, RecursionFamily};

fn table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_table");
    for n in [16usize, 32, 64] {
        group.bench_with_input(BenchmarkId::new("graph(2,4)", n), &n, |b, &n| {
            b.iter(|| {
                let f = Arc::new(RecursionFamily::graph(2.0, 4.0).unwrap());
                black_box(build_table(f, n).unwrap())
            })
        });
        group.bench_with_input(BenchmarkId::new("pollaczek(0.5,1)", n), &n, |b, &n| {
            b.iter(|| {
                let f = Arc::new(RecursionFamily::pollaczek(0.5, 1.0).unwrap());
                black_box(build_table(f, n).unwrap())
            })
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let f = RecursionFamily::jacobi(0.5, 0.5).unwrap();
    c.bench_function("verify_hypergroup jacobi N=32", |b| {
        b.iter(|| black_box(verify_hypergroup(&f, 32)))
    });
}

fn disc(c: &mut Criterion) {
    c.bench_function("disc table degree 3", |b| {
        b.iter(|| {
            let t = DiscTable::new(1.0, 3).unwrap();
            black_box(t.convolve_points((2, 1), (1, 2)).unwrap())
        })
    });
}

fn join(c: &mut Criterion) {
    c.bench_function("join Z2 v Z3 axioms", |b| {
        b.iter(|| {
            let k = hyplab_core::join(
                FiniteHypergroup::cyclic(2, "h").unwrap(),
                FiniteHypergroup::cyclic(3, "j").unwrap(),
                4,
            )
            .unwrap();
            black_box(hyplab_core::joins::verify_join_axioms(&k, 4, 1e-12).unwrap())
        })
    });
}

criterion_group!(benches, table_build, structure, disc, join);
criterion_main!(benches);
