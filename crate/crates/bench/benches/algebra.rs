use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use stiefel_core::{
    apply_operation, immersion_pullback, random_element, Bidegree, CoeffRing, FieldProfile, MotivicBase, OperationSpec,
    StiefelPresentation,
};

/// First seeded element from `start` on with at least three terms.
fn dense_element(pres: &StiefelPresentation, start: u64) -> stiefel_core::Element {
    (start..).map(|seed| random_element(pres, None, seed)).find(|x| x.len() >= 3).unwrap()
}

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for n in [4u32, 8, 12] {
        let pres = StiefelPresentation::general_linear(n, CoeffRing::Integers, FieldProfile::default()).unwrap();
        let x = dense_element(&pres, 0);
        let y = dense_element(&pres, 1000);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(x, y), |b, (x, y)| {
            b.iter(|| black_box(x).mul(black_box(y)).unwrap())
        });
    }
    group.finish();
}

fn operations(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_operation");
    for n in [4u32, 8, 12] {
        let pres = StiefelPresentation::general_linear(n, CoeffRing::IntegersMod(2), FieldProfile::default()).unwrap();
        let x = pres.word(&(1..=n).step_by(2).collect::<Vec<_>>()).unwrap();
        let op = OperationSpec::sq(4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| apply_operation(black_box(&op), black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_basis");
    let base = MotivicBase::new(CoeffRing::Integers, FieldProfile::default());
    for n in [6u32, 8, 10] {
        let f = immersion_pullback(n, n, base).unwrap();
        let bd = Bidegree::new(2 * n as i64, n as i64 + 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| f.kernel_basis(black_box(bd)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, multiply, operations, kernels);
criterion_main!(benches);
