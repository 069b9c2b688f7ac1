use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twosided::experiments::{run_condnum, CondnumConfig, CondnumVariant};
use twosided::numerics::svd;
use twosided::sampling::{gen_equispaced, GridMode};
use twosided::specmon::{run_scenario, ScenarioConfig};
use twosided::uniqueness::heatmap_scan;
use twosided::{CMatrix, Execution, C64};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn heatmap(c: &mut Criterion) {
    let mut g = c.benchmark_group("heatmap_scan");
    for res in [41usize, 101] {
        let grid = gen_equispaced(-5.0, 5.0, res, GridMode::InclusiveEndpoints).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, res), &grid, |b, grid| {
                b.iter(|| heatmap_scan(black_box(0.0), grid, 1.85e-5, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn condnum(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_condnum");
    g.sample_size(10);
    for variant in [CondnumVariant::Hermite, CondnumVariant::Sinc] {
        let config = CondnumConfig::new(variant, 4, 24);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, variant.name()), &config, |b, cfg| {
                b.iter(|| run_condnum(cfg, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn specmon(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_scenario");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for trials in [2usize, 8] {
        let config = ScenarioConfig {
            trials,
            ..ScenarioConfig::default()
        };
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, trials), &config, |b, cfg| {
                b.iter(|| run_scenario(cfg, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn jacobi_svd(c: &mut Criterion) {
    let mut g = c.benchmark_group("svd");
    for n in [16usize, 64] {
        let a = CMatrix::from_fn(n, n, |i, j| {
            let x = (i * 31 + j * 17) as f64;
            C64::new(x.sin(), (0.5 * x).cos())
        });
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| svd(a).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, heatmap, condnum, specmon, jacobi_svd);
criterion_main!(benches);
