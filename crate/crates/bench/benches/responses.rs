use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subpir_bench::fixture;
use subpir_core::pir::{reconstruct_iteration, respond_all, retrieve_file, server_response};
use subpir_core::presets::{EXAMPLE_2, EXAMPLE_3};
use subpir_core::Variant;

fn single_server(c: &mut Criterion) {
    let mut group = c.benchmark_group("server_response");
    for (name, preset, k) in [("gf8", EXAMPLE_2, 3), ("gf9", EXAMPLE_3, 5)] {
        for variant in [Variant::Plain, Variant::SubfieldSubcode] {
            let fx = fixture(preset, k, variant, 1000);
            let column = fx.storage.column(0);
            let query = fx.queries.for_server(0).to_vec();
            let ext = fx.scheme.field().clone();
            let alphabet = fx.queries.alphabet().clone();
            group.bench_with_input(BenchmarkId::new(name, variant), &variant, |b, _| {
                b.iter(|| server_response(&ext, &alphabet, black_box(&query), black_box(&column)))
            });
        }
    }
    group.finish();
}

fn all_servers(c: &mut Criterion) {
    let mut group = c.benchmark_group("respond_and_reconstruct");
    for variant in [Variant::Plain, Variant::SubfieldSubcode] {
        let fx = fixture(EXAMPLE_2, 3, variant, 100);
        group.bench_function(BenchmarkId::new("respond", variant), |b| {
            b.iter(|| respond_all(&fx.scheme, &fx.storage, black_box(&fx.queries)))
        });
        let (responses, _) = respond_all(&fx.scheme, &fx.storage, &fx.queries).unwrap();
        group.bench_function(BenchmarkId::new("reconstruct", variant), |b| {
            b.iter(|| reconstruct_iteration(&fx.scheme, black_box(&responses), 1))
        });
        group.bench_function(BenchmarkId::new("retrieve_file", variant), |b| {
            b.iter(|| retrieve_file(&fx.scheme, &fx.storage, black_box(1)))
        });
    }
    group.finish();
}

criterion_group!(benches, single_server, all_servers);
criterion_main!(benches);
