//! Parallel against sequential map on two grid workloads: building and
//! folding every L-graph node, and the per-class identity check.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use z2tri::analyze::fundamental_report;
use z2tri::build::lgraph::lgraph_fractions;
use z2tri::build::{fold_lst, lst};
use z2tri::parallel::{map, map_sequential};
use z2tri::z2::{basis_from_skeleton, nonzero_classes};
use z2tri::{compute_skeleton, Triangulation};

fn folds(fracs: &[(u64, u64)]) -> Vec<Triangulation> {
    map_sequential(fracs, |&(p, q)| {
        let (t, m) = lst(p, q).unwrap();
        m.boundary_weights().map(|w| fold_lst(&t, &m, w).unwrap().0)
    })
    .into_iter()
    .flatten()
    .collect()
}

fn build_kernel(&(p, q): &(u64, u64)) -> usize {
    let (t, m) = lst(p, q).unwrap();
    m.boundary_weights().iter().map(|&w| fold_lst(&t, &m, w).unwrap().0.tet_count()).sum()
}

fn identity_kernel(tri: &Triangulation) -> i64 {
    let sk = compute_skeleton(tri);
    nonzero_classes(&basis_from_skeleton(&sk))
        .iter()
        .map(|phi| fundamental_report(tri, &sk, phi, 0).unwrap().identity_lhs)
        .sum()
}

fn bench(c: &mut Criterion) {
    let fracs = lgraph_fractions(9);
    let mut g = c.benchmark_group("build_folds");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", fracs.len()), |b| b.iter(|| map(&fracs, build_kernel)));
    g.bench_function(BenchmarkId::new("sequential", fracs.len()), |b| b.iter(|| map_sequential(&fracs, build_kernel)));
    g.finish();

    let tris = folds(&fracs);
    let mut g = c.benchmark_group("identity");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", tris.len()), |b| b.iter(|| map(&tris, identity_kernel)));
    g.bench_function(BenchmarkId::new("sequential", tris.len()), |b| b.iter(|| map_sequential(&tris, identity_kernel)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
