use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use dporders::classify::{enumerate_minimal_tadpo_ruled, enumerate_minimal_tdpo_p2, fixture_by_id, RuledBase};
use dporders::positivity::cone_diagnostics;
use dporders::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("p2", name), &exec, |b, &exec| {
            b.iter(|| enumerate_minimal_tdpo_p2(black_box(24), exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("f0", name), &exec, |b, &exec| {
            b.iter(|| enumerate_minimal_tadpo_ruled(RuledBase::F0, black_box(12), 8, exec).unwrap())
        });
    }
    g.finish();
}

fn diagnostics(c: &mut Criterion) {
    let mut g = c.benchmark_group("cone_diagnostics");
    let o = fixture_by_id("dp-p2-deg3-n8").unwrap().order.clone();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("p2-n8", name), &exec, |b, &exec| {
            b.iter(|| cone_diagnostics(black_box(&o), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = enumeration, diagnostics
}
criterion_main!(benches);
