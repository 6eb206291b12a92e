use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use simplex_limits::geometry::log_simplex_volume;
use simplex_limits::sampling::log_volume_samples;
use simplex_limits::special::{log_barnes_g, polygamma};
use simplex_limits::{ModelSpec, RngSeed, SamplePath, SimplexDims, Target};
use simplex_limits_bench::{gaussian_cloud, SPECIAL_ARGS};

fn special(c: &mut Criterion) {
    let mut group = c.benchmark_group("special");
    for z in SPECIAL_ARGS {
        for m in [0u32, 3] {
            group.bench_with_input(BenchmarkId::new(format!("polygamma/{m}"), z), &z, |b, &z| {
                b.iter(|| polygamma(m, black_box(z)))
            });
        }
        group.bench_with_input(BenchmarkId::new("log_barnes_g", z), &z, |b, &z| b.iter(|| log_barnes_g(black_box(z))));
    }
    group.finish();
}

fn qr_volume(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_simplex_volume");
    for (n, r) in [(10, 3), (50, 10), (200, 50)] {
        let cloud = gaussian_cloud(n, r + 1);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{r}")), &cloud, |b, cloud| {
            b.iter(|| log_simplex_volume(black_box(cloud)))
        });
    }
    group.finish();
}

fn samplers(c: &mut Criterion) {
    const COUNT: usize = 1024;
    let mut group = c.benchmark_group("log_volume_samples");
    group.throughput(Throughput::Elements(COUNT as u64));
    group.sample_size(20);
    let dims = SimplexDims::new(100, 20).unwrap();
    for (name, model) in [("gaussian", ModelSpec::gaussian()), ("beta", ModelSpec::beta(2.0).unwrap())] {
        for path in [SamplePath::Reference, SamplePath::Geometric] {
            group.bench_function(BenchmarkId::new(name, format!("{path:?}")), |b| {
                b.iter(|| log_volume_samples(model, dims, Target::Simplex, path, COUNT, RngSeed::new(1, 0)))
            });
        }
    }
    group.finish();
}

criterion_group!(kernels, special, qr_volume, samplers);
criterion_main!(kernels);
