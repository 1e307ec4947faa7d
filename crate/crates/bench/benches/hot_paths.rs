use criterion::{black_box, criterion_group, criterion_main, Criterion};
use cyclebound::cycles::{closed_walk_classes, count_simple_cycles, count_triangles};
use cyclebound::graph::Graph;
use cyclebound::oracle::verify_triangle_average;
use cyclebound::powersum::{numeric_maximize, two_level_candidates, PowerSumProblem};
use cyclebound::spectral::{adjacency_spectrum, trace_power};

fn exact_counting(c: &mut Criterion) {
    let k6 = Graph::complete(6);
    let k8 = Graph::complete(8);
    c.bench_function("trace_power_k6_len10", |b| {
        b.iter(|| trace_power(black_box(&k6), black_box(10)))
    });
    c.bench_function("triangles_k8", |b| b.iter(|| count_triangles(black_box(&k8)).unwrap()));
    c.bench_function("simple_cycles_k8_len7", |b| {
        b.iter(|| count_simple_cycles(black_box(&k8), black_box(7)).unwrap())
    });
    c.bench_function("walk_classes_k5_len6", |b| {
        b.iter(|| closed_walk_classes(black_box(&k5()), black_box(6)).unwrap())
    });
}

fn k5() -> Graph {
    Graph::complete(5)
}

fn spectra(c: &mut Criterion) {
    let k7 = Graph::complete(7);
    c.bench_function("spectrum_k7", |b| {
        b.iter(|| adjacency_spectrum(black_box(&k7), black_box(1e-10)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    c.bench_function("triangle_sweep_n3_vmax5", |b| {
        b.iter(|| verify_triangle_average(black_box(3), black_box(5)).unwrap())
    });
}

fn optimization(c: &mut Criterion) {
    let problem = PowerSumProblem::signed(6, 4).unwrap();
    c.bench_function("two_level_candidates_n6_p4", |b| {
        b.iter(|| two_level_candidates(black_box(&problem)))
    });
    c.bench_function("numeric_maximize_n6_p4", |b| {
        b.iter(|| numeric_maximize(black_box(&problem), 1, 400, 1e-7).unwrap())
    });
}

criterion_group!(benches, exact_counting, spectra, sweeps, optimization);
criterion_main!(benches);
