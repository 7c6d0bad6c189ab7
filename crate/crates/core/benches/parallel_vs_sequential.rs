use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use keykernels::exec::Exec;
use keykernels::kernels::theorem6_rhs_with;
use keykernels::scalarprod::orthogonality_matrix_with;
use keykernels::GroupType;

fn modes() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ]
}

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram_matrix");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(
            BenchmarkId::new(name, "C n=2 bound=4"),
            &exec,
            |b, &exec| b.iter(|| orthogonality_matrix_with(exec, GroupType::C, 2, 4).unwrap()),
        );
    }
    group.finish();
}

fn key_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("key_expansion");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(
            BenchmarkId::new(name, "BC n=3 maxdeg=5"),
            &exec,
            |b, &exec| b.iter(|| theorem6_rhs_with(exec, GroupType::BC, 3, 5).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, gram, key_expansion);
criterion_main!(benches);
