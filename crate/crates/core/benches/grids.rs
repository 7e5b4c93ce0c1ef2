//! Certificate-grid benchmarks comparing the rayon-backed parallel map
//! with the sequential fallback on the same workloads. Run with
//! `cargo bench -p hecke` (the default `parallel` feature makes the two
//! arms differ; without it both run the fallback).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke::algebra::{Algebra, Specialization};
use hecke::batch::{kl_grid, verify_suite, ExecMode};
use hecke::data;

fn fresh(datum: fn() -> hecke::RootDatum) -> Algebra {
    // a new algebra per iteration keeps the shared memo tables cold, so
    // the two modes do the same work
    Algebra::new(datum(), Specialization::Generic).expect("bundled datum")
}

fn bench_kl_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("kl-grid");
    group.sample_size(10);
    for (name, datum, bound) in [
        ("gl2-len10", data::gl2 as fn() -> hecke::RootDatum, 10u64),
        ("gl3-len8", data::gl3, 8),
        ("sp2-len10", data::sp2, 10),
    ] {
        for (mode_name, mode) in
            [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)]
        {
            group.bench_with_input(
                BenchmarkId::new(name, mode_name),
                &(datum, bound, mode),
                |b, (datum, bound, mode)| {
                    b.iter(|| {
                        let alg = fresh(*datum);
                        let certs = kl_grid(&alg, *bound, *mode).expect("grid");
                        assert!(certs.iter().all(|c| c.valid()));
                        certs.len()
                    })
                },
            );
        }
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify-suite");
    group.sample_size(10);
    for (mode_name, mode) in
        [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)]
    {
        group.bench_with_input(BenchmarkId::new("sp2-len5", mode_name), &mode, |b, mode| {
            b.iter(|| {
                let alg = fresh(data::sp2);
                let outcomes = verify_suite(&alg, 5, *mode);
                assert!(outcomes.iter().all(|o| o.pass));
                outcomes.len()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_kl_grid, bench_verify);
criterion_main!(benches);
