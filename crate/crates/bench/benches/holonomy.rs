use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;
use vacphase::{
    helix_to_path, parallel_transport_holonomy, solid_angle_line_integral,
    solid_angle_spherical_excess, tangent_trace, TraceOptions,
};
use vacphase_bench::{helix, helix_trace};

fn solid_angle_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("solid_angle");
    for spt in [360u32, 3600] {
        let trace = helix_trace(0.7, 1, spt);
        group.throughput(Throughput::Elements(u64::from(spt)));
        group.bench_with_input(BenchmarkId::new("line_integral", spt), &trace, |b, t| {
            b.iter(|| solid_angle_line_integral(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("spherical_excess", spt), &trace, |b, t| {
            b.iter(|| solid_angle_spherical_excess(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("transport", spt), &trace, |b, t| {
            b.iter(|| parallel_transport_holonomy(black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn tangents(c: &mut Criterion) {
    let path = helix_to_path(&helix(0.7, 5, 3600)).unwrap();
    c.bench_function("tangent_trace/5x3600", |b| {
        b.iter(|| tangent_trace(black_box(&path), TraceOptions::default()).unwrap())
    });
}

criterion_group!(benches, solid_angle_methods, tangents);
criterion_main!(benches);
