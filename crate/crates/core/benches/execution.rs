//! Sequential vs rayon fan-out over the exact identity checks.
//!
//! Abel summation is excluded so that the timing reflects rational work.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use probderange::exec::Execution;
use probderange::moments::MomentProfile;
use probderange::verify::theorems::sampled;
use probderange::verify::{certify_grid, run_suite, TheoremId, VerifyConfig};

fn strategies() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn suite(c: &mut Criterion) {
    let ids: Vec<TheoremId> = TheoremId::ALL.into_iter().filter(|&id| id != TheoremId::AbelIdentity).collect();
    let points = sampled(42, 4);
    let cfg = VerifyConfig::default();
    let mut group = c.benchmark_group("suite_n10");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_suite(&ids, &points, 10, exec, &cfg))
        });
    }
    group.finish();
}

fn grid(c: &mut Criterion) {
    let profile: MomentProfile = "poisson:3/2".parse().unwrap();
    let cfg = VerifyConfig::default();
    let mut group = c.benchmark_group("grid_explicit_sum_n8");
    group.sample_size(10);
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| certify_grid(TheoremId::ExplicitSum, &profile, 0, 8, exec, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, suite, grid);
criterion_main!(benches);
