use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gclose::algebra::{matrix, semisimple_from_dims, split, Graded};
use gclose::closure::{galois_closure_with, ClosureOptions};
use gclose::linalg::Field;
use gclose::par::Exec;

fn cases() -> Vec<(&'static str, Graded)> {
    let q = Field::Rational;
    vec![
        ("Q^4", split(q, 4)),
        ("Mat_3", matrix(q, 3)),
        ("k x k x Mat_2", semisimple_from_dims(q, &[1, 1, 2]).unwrap()),
    ]
}

fn saturation(c: &mut Criterion) {
    let mut group = c.benchmark_group("galois_closure");
    group.sample_size(10);
    for (name, g) in cases() {
        for (mode, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let opts = ClosureOptions::default().with_exec(exec);
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| galois_closure_with(&g.0, &g.1, &opts).unwrap().dim())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, saturation);
criterion_main!(benches);
