use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use eigenlpf::analysis::{lpf_density, sato_tate_test, ThresholdSpec};
use eigenlpf::arith::sieve_primes;
use eigenlpf::cyclotomic::{classify_prime_divisors, ClassifyOptions, LucasParameters};
use eigenlpf::eigenform::{delta_series, eigenform_table, eta_power_series, EtaVariant};
use eigenlpf::quadfield::{class_number_of_discriminant, field_from_prime, wieferich_valuation, split_prime};
use eigenlpf::{Factorizer, FormDescriptor};
use eigenlpf_bench::tau_samples;

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    for limit in [10_000u64, 100_000] {
        g.bench_with_input(BenchmarkId::new("delta", limit), &limit, |b, &l| {
            b.iter(|| delta_series(black_box(l)).unwrap())
        });
    }
    g.bench_function("weight26/10000", |b| {
        let f = FormDescriptor::new(26).unwrap();
        b.iter(|| eigenform_table(f, black_box(10_000)).unwrap())
    });
    g.bench_function("eta_cubed/100000", |b| {
        b.iter(|| eta_power_series(black_box(100_000), EtaVariant::Eta3))
    });
    g.finish();
}

fn arith(c: &mut Criterion) {
    let f = Factorizer::default();
    let mut g = c.benchmark_group("factor_tau");
    for (p, tau) in tau_samples() {
        g.bench_with_input(BenchmarkId::from_parameter(p), &tau, |b, t| {
            b.iter(|| f.factorize(black_box(t)))
        });
    }
    g.finish();
    c.bench_function("sieve/1e7", |b| b.iter(|| sieve_primes(black_box(10_000_000)).unwrap()));
    c.bench_function("class_number/-999999991", |b| {
        b.iter(|| class_number_of_discriminant(black_box(-999_999_991)).unwrap())
    });
}

fn arithmetic_of_alpha(c: &mut Criterion) {
    let t = delta_series(100).unwrap();
    let af = field_from_prime(&t, 11).unwrap();
    let ideals = split_prime(&af.field, 1_000_003).unwrap();
    c.bench_function("wieferich/p=11,q=1000003", |b| {
        b.iter(|| wieferich_valuation(&af, black_box(&ideals[0])).unwrap())
    });
    let lp = LucasParameters::from_table(&t, 11).unwrap().normalized();
    c.bench_function("classify_phi/p=11,n=40", |b| {
        b.iter(|| classify_prime_divisors(&lp, black_box(40), &af.field, &ClassifyOptions::default()).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let t = delta_series(20_000).unwrap();
    let mut g = c.benchmark_group("scans");
    g.sample_size(10);
    g.bench_function("thm1/20000", |b| {
        b.iter(|| lpf_density(&t, 20_000, ThresholdSpec::Thm1 { epsilon: 0.1 }, &Factorizer::default()).unwrap())
    });
    g.bench_function("sato_tate/20000", |b| b.iter(|| sato_tate_test(&t, 20_000, 40).unwrap()));
    g.finish();
}

criterion_group!(benches, series, arith, arithmetic_of_alpha, scans);
criterion_main!(benches);
