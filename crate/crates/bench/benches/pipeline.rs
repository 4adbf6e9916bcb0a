use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pedal_core::conics::{conic_features, conic_from_five_points};
use pedal_core::poncelet::{tangent_chain, verify_hexagon_lemmas};
use pedal_core::reuleaux::{
    check_elementary_properties, check_inverted_configuration, locate_parabola_pedals, npc_endpoints, sweep_study,
    verify_focus_theorem,
};
use pedal_core::{HexagonConfig, Point, ReuleauxTriangle};

fn endpoint_pipeline(c: &mut Criterion) {
    let r = ReuleauxTriangle::canonical();
    let m = r.pedal_point_at(0.3).unwrap();
    let e = npc_endpoints(&r, m).unwrap();
    let five = e.five();

    c.bench_function("npc_endpoints", |b| {
        b.iter(|| npc_endpoints(black_box(&r), black_box(m)))
    });
    c.bench_function("conic_from_five_points", |b| {
        b.iter(|| conic_from_five_points(black_box(&five)))
    });
    let q = conic_from_five_points(&five).unwrap();
    c.bench_function("conic_features", |b| b.iter(|| conic_features(black_box(&q))));
    c.bench_function("verify_focus_theorem", |b| {
        b.iter(|| verify_focus_theorem(black_box(&r), black_box(m), 1e-8))
    });
    c.bench_function("check_inverted_configuration", |b| {
        b.iter(|| check_inverted_configuration(black_box(&r), black_box(m), 1.0, 1e-8))
    });
    c.bench_function("check_elementary_properties", |b| {
        b.iter(|| check_elementary_properties(black_box(&r), black_box(m), 1e-9))
    });
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_study");
    let symmetric = ReuleauxTriangle::canonical();
    let asymmetric = ReuleauxTriangle::from_vertices_and_radii(
        [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.4, 0.9)],
        [1.1, 1.3, 1.2],
    )
    .unwrap();
    for n in [25, 99] {
        group.bench_with_input(BenchmarkId::new("symmetric", n), &n, |b, &n| {
            b.iter(|| sweep_study(&symmetric, n, 1.0))
        });
        group.bench_with_input(BenchmarkId::new("asymmetric", n), &n, |b, &n| {
            b.iter(|| sweep_study(&asymmetric, n, 1.3))
        });
    }
    group.finish();
    let mut group = c.benchmark_group("parabola");
    group.sample_size(10);
    group.bench_function("locate_parabola_pedals", |b| {
        b.iter(|| locate_parabola_pedals(&symmetric, 1.0))
    });
    group.finish();
}

fn hexagon(c: &mut Criterion) {
    let hex = HexagonConfig::regular(Point::ORIGIN, 1.0, 0.0).unwrap();
    let p0 = hex.arc_point(0.37);
    c.bench_function("tangent_chain", |b| {
        b.iter(|| tangent_chain(black_box(&hex), black_box(p0)))
    });
    c.bench_function("verify_hexagon_lemmas", |b| {
        b.iter(|| verify_hexagon_lemmas(black_box(&hex), black_box(p0), 1e-8))
    });
}

criterion_group!(benches, endpoint_pipeline, sweeps, hexagon);
criterion_main!(benches);
