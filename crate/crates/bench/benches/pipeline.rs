use criterion::{criterion_group, criterion_main, Criterion};

use aomoto_core::arrangement::{discriminantal, DiscriminantalSpec};
use aomoto_core::exact::frac;
use aomoto_core::orlik_solomon::{build_os, omega_wedge_matrix, OSCache};
use aomoto_core::strata::total_complex;

fn kappa() -> aomoto_core::Scalar {
    frac(9973, 83)
}

fn bench_build_os(c: &mut Criterion) {
    let spec = DiscriminantalSpec::with_default_points(vec![2, 2], 3, kappa()).unwrap();
    let arrangement = discriminantal(&spec);
    c.bench_function("build_os m=(2,2) k=3", |b| {
        b.iter(|| build_os(std::hint::black_box(arrangement.clone())))
    });
}

fn bench_omega_wedge(c: &mut Criterion) {
    let spec = DiscriminantalSpec::with_default_points(vec![2, 2], 3, kappa()).unwrap();
    let os = build_os(discriminantal(&spec));
    c.bench_function("omega_wedge m=(2,2) k=3", |b| {
        b.iter(|| omega_wedge_matrix(std::hint::black_box(&os)).unwrap())
    });
}

fn bench_total_complex(c: &mut Criterion) {
    let kappa = kappa();
    c.bench_function("total_complex m=(2,2) k=3", |b| {
        b.iter(|| {
            let cache = OSCache::default();
            total_complex(&[2, 2], 3, std::hint::black_box(&kappa), &cache).unwrap()
        })
    });
    c.bench_function("total_complex m=(2,2) k=3 warm cache", |b| {
        let cache = OSCache::default();
        total_complex(&[2, 2], 3, &kappa, &cache).unwrap();
        b.iter(|| total_complex(&[2, 2], 3, std::hint::black_box(&kappa), &cache).unwrap())
    });
}

criterion_group!(
    benches,
    bench_build_os,
    bench_omega_wedge,
    bench_total_complex
);
criterion_main!(benches);
