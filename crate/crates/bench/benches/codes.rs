use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use trace_codes::poly::Poly;
use trace_codes::repro::{example_code, Ordering};
use trace_codes::tracecode::qc_family;
use trace_codes::Field;

fn field_ops(c: &mut Criterion) {
    let f = Field::parse("2^8").unwrap();
    c.bench_function("gf256_mul_inv_all", |b| {
        b.iter(|| {
            let mut acc = 1u32;
            for e in 1..f.order() as u32 {
                acc = f.mul(acc, f.inv(e).unwrap());
            }
            black_box(acc)
        })
    });
}

fn irreducibles(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    c.bench_function("irreducibles_q5_d4", |b| b.iter(|| black_box(Poly::irreducibles(&f, 4).len())));
}

fn trace_code(c: &mut Criterion) {
    c.bench_function("qc_family_build_p5_d2_r2", |b| b.iter(|| black_box(qc_family(5, 2, 2).unwrap().1.k())));
    let code = example_code(Ordering::Theta).unwrap();
    c.bench_function("example_min_distance", |b| {
        b.iter(|| black_box(code.code().min_distance(1).unwrap()))
    });
    let (_, big) = qc_family(3, 2, 5).unwrap();
    c.bench_function("qc_p3_d2_r5_min_distance", |b| {
        b.iter(|| black_box(big.code().min_distance(1).unwrap()))
    });
}

criterion_group!(benches, field_ops, irreducibles, trace_code);
criterion_main!(benches);
