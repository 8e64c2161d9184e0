use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};

use exdiv_core::arithfun::{self, FunctionId};
use exdiv_core::constants::{self, ConstantId};
use exdiv_core::convolve::{self, ConvolutionKind, TabulatedFunction};
use exdiv_core::factorint::factor;
use exdiv_core::summatory;

fn bench_factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    group.bench_function("24_digit_unitary_perfect", |b| {
        b.iter(|| factor(black_box(146361946186458562560000u128)).unwrap())
    });
    group.bench_function("semiprime_64bit", |b| {
        b.iter(|| factor(black_box(1_000_000_007u128 * 1_000_000_009)).unwrap())
    });
    group.finish();
}

fn bench_sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    const RANGE: u64 = 1_000_000;
    group.throughput(Throughput::Elements(RANGE));
    group.sample_size(20);
    group.bench_function("factorizations_1e6", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            summatory::sieve_factorizations(2, RANGE, |_, fs| {
                acc += fs.len() as u64;
                Ok(())
            })
            .unwrap();
            acc
        })
    });
    group.bench_function("summatory_tau_e_star_1e6", |b| {
        b.iter(|| summatory::summatory(FunctionId::TauEStar, RANGE, 1, 1).unwrap())
    });
    group.finish();
}

fn bench_eval(c: &mut Criterion) {
    let f = factor(963761198400).unwrap(); // highly composite
    c.bench_function("eval_sigma_e_star", |b| {
        b.iter(|| arithfun::eval(FunctionId::SigmaEStar, black_box(&f)).unwrap())
    });
}

fn bench_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("constants");
    group.sample_size(20);
    group.bench_function("euler_product_c1_1e5", |b| {
        b.iter(|| constants::euler_product(ConstantId::C1, 100_000, 64).unwrap())
    });
    group.bench_function("zeta_half", |b| {
        b.iter(|| constants::zeta_real(black_box(0.5)).unwrap())
    });
    group.finish();
}

fn bench_convolve(c: &mut Criterion) {
    let one = TabulatedFunction::constant_one(2000).unwrap();
    let mes = TabulatedFunction::from_catalog(FunctionId::MuEStar, 2000).unwrap();
    let mut group = c.benchmark_group("convolve");
    group.sample_size(30);
    group.bench_function("exp_unitary_2000", |b| {
        b.iter(|| convolve::convolve(ConvolutionKind::ExpUnitary, &one, &mes).unwrap())
    });
    group.bench_function("e_unitary_inverse_2000", |b| {
        b.iter(|| convolve::e_unitary_inverse(&one).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_factor,
    bench_sieve,
    bench_eval,
    bench_constants,
    bench_convolve
);
criterion_main!(benches);
