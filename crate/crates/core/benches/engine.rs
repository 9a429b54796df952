use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dunkl_core::cherednik::Context;
use dunkl_core::coxeter::{build_root_system, Family};
use dunkl_core::par;
use dunkl_core::subalgebra::{pbw_rank_check, soundness_check, verify_relation_suite, Kind, SubAlgebra, Suite};

fn ctx(family: Family, n: usize) -> std::sync::Arc<Context> {
    Context::symbolic(build_root_system(family, n).unwrap()).unwrap()
}

// Fresh contexts per iteration so the memo tables do not hide the work.
fn relation_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations-so");
    group.sample_size(10);
    for n in [3, 4] {
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| verify_relation_suite(&ctx(Family::A, n), Suite::So, None).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| par::sequential(|| verify_relation_suite(&ctx(Family::A, n), Suite::So, None).unwrap()))
        });
    }
    group.finish();
}

fn coxeter_b3(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations-coxeter-B3");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| verify_relation_suite(&ctx(Family::B, 3), Suite::Coxeter, None).unwrap()));
    group.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| verify_relation_suite(&ctx(Family::B, 3), Suite::Coxeter, None).unwrap()))
    });
    group.finish();
}

fn straightening(c: &mut Criterion) {
    let mut group = c.benchmark_group("straightening");
    group.sample_size(10);
    group.bench_function("pbw-rank-so3-d3/parallel", |b| {
        b.iter(|| pbw_rank_check(&SubAlgebra::new(&ctx(Family::A, 3), Kind::So), 3).unwrap())
    });
    group.bench_function("pbw-rank-so3-d3/sequential", |b| {
        b.iter(|| par::sequential(|| pbw_rank_check(&SubAlgebra::new(&ctx(Family::A, 3), Kind::So), 3).unwrap()))
    });
    group.bench_function("soundness-so4/parallel", |b| {
        b.iter(|| soundness_check(&SubAlgebra::new(&ctx(Family::A, 4), Kind::So), 20, 3, 7))
    });
    group.bench_function("soundness-so4/sequential", |b| {
        b.iter(|| par::sequential(|| soundness_check(&SubAlgebra::new(&ctx(Family::A, 4), Kind::So), 20, 3, 7)))
    });
    group.finish();
}

criterion_group!(benches, relation_suites, coxeter_b3, straightening);
criterion_main!(benches);
