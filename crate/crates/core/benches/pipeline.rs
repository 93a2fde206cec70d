use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gvtoric::congruence::{sweep, SweepBounds};
use gvtoric::gv::gv_table;
use gvtoric::{Exec, ToricDiagram, WCache};

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("gv_table");
    group.sample_size(10);
    for (name, d, d_max) in [("p2", ToricDiagram::p2(), 4), ("f1", ToricDiagram::fk(1), 3)] {
        for (mode, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(format!("{name}_d{d_max}"), mode), &exec, |b, &exec| {
                b.iter(|| gv_table(&d, d_max, &WCache::in_memory(), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("congruence_sweep");
    group.sample_size(10);
    let bounds = SweepBounds::default();
    for (mode, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(mode), &exec, |b, &exec| b.iter(|| sweep(&bounds, exec)));
    }
    group.finish();
}

criterion_group!(benches, tables, sweeps);
criterion_main!(benches);
