use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use orbitobs::order::{mult_order, order_spectrum, primes_with_order};
use orbitobs::{BigRat, FactorOracle, Factorer, SearchConfig};

fn mult_orders(c: &mut Criterion) {
    let lambda = BigRat::from_ratio(3, 2);
    let mut g = c.benchmark_group("mult_order");
    for p in [1_000_003u64, 4_294_967_291] {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| mult_order(black_box(&lambda), p).unwrap())
        });
    }
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let f = Factorer::default();
    let mut g = c.benchmark_group("factor");
    for n in [48u32, 64, 96] {
        let m = (BigUint::from(1u32) << n) - 1u32;
        g.bench_with_input(BenchmarkId::new("2^n-1", n), &m, |b, m| b.iter(|| f.factor(black_box(m)).unwrap()));
    }
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let f = Factorer::default();
    let two = BigRat::from_ratio(2, 1);
    c.bench_function("order_spectrum 2 n<=36", |b| {
        b.iter(|| order_spectrum(&two, 36, 1 << 32, &cfg, &f).unwrap())
    });
    c.bench_function("primes_with_order 2 n=16 p<1e5", |b| {
        b.iter(|| primes_with_order(&two, 16, 100_000, &cfg, &f).unwrap())
    });
}

criterion_group!(benches, mult_orders, factoring, spectra);
criterion_main!(benches);
