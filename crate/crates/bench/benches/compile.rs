use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parity_forge::compiler::{emit_circuit, prop1_compile, theorem1_compile};
use parity_forge::generating_sets::triangular_layouts;
use parity_forge::pauli::PauliVector;

fn targets(n: usize, count: usize) -> Vec<PauliVector> {
    let full = (1usize << (2 * n)) - 1;
    (0..count)
        .map(|i| PauliVector::from_index(n, 1 + (i * 7919) % full).unwrap())
        .collect()
}

fn constant_depth(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile/constant-depth");
    for n in [6, 7, 16] {
        let ts = targets(n, 64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ts, |b, ts| {
            b.iter(|| {
                ts.iter()
                    .map(|t| prop1_compile(n, t, 0.3).unwrap().parity_uses)
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn chain_layouts(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile/layouts");
    let ts = targets(10, 64);
    for (name, p) in triangular_layouts() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &ts, |b, ts| {
            b.iter(|| {
                ts.iter()
                    .map(|t| {
                        emit_circuit(&theorem1_compile(&p, t, 0.3).unwrap())
                            .unwrap()
                            .len()
                    })
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, constant_depth, chain_layouts);
criterion_main!(benches);
