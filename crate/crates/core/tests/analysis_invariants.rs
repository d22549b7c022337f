use std::sync::OnceLock;

use eigenlpf::analysis::{
    congruence_density, lpf_density, natural_density_over_n, odd_prime_power_suite,
    sato_tate_test, ThresholdSpec,
};
use eigenlpf::eigenform::delta_series;
use eigenlpf::oracles::{prime_count_trial, ramanujan_691_count};
use eigenlpf::{CoefficientTable, Factorizer};
use num_traits::Signed;

fn delta() -> &'static CoefficientTable {
    static T: OnceLock<CoefficientTable> = OnceLock::new();
    T.get_or_init(|| delta_series(20_000).unwrap())
}

#[test]
fn ramanujan_congruence_count() {
    let r = congruence_density(delta(), 20_000, 691).unwrap();
    assert_eq!(r.pi_f, ramanujan_691_count(20_000));
    assert_eq!(r.pi_x, prime_count_trial(20_000));
}

#[test]
fn congruence_ratio_at_eleven() {
    let r = congruence_density(delta(), 20_000, 11).unwrap();
    assert!(r.ratio >= 0.5 / 11.0 && r.ratio <= 2.0 / 11.0, "{}", r.ratio);
    assert!(r.pi_f_star <= r.pi_f);
}

#[test]
fn thm1_failures_match_a_direct_rescan() {
    let spec = ThresholdSpec::Thm1 { epsilon: 0.1 };
    let r = lpf_density(delta(), 20_000, spec, &Factorizer::default()).unwrap();
    assert!(r.counts_close());
    // The threshold stays below 2, so a failure means |tau(p)| = 1.
    let sieve = eigenlpf::arith::sieve_primes(20_000).unwrap();
    let rescan: Vec<u64> = sieve
        .primes_in(5, 20_000)
        .iter()
        .copied()
        .filter(|&p| delta().get(p).unwrap().abs() == 1.into())
        .collect();
    let failing: Vec<u64> = r.failing.iter().map(|e| e.n).collect();
    assert_eq!(failing, rescan);
}

#[test]
fn thm3_and_natural_densities_close() {
    let c = 1.0 / (1e5f64).ln().powf(2.0 / 7.0);
    let r = lpf_density(delta(), 20_000, ThresholdSpec::Thm3 { c }, &Factorizer::default()).unwrap();
    assert!(r.counts_close());
    assert!(r.density_floor.is_some());
    let r = natural_density_over_n(
        delta(),
        5_000,
        ThresholdSpec::Thm1 { epsilon: 0.1 },
        &Factorizer::default(),
    )
    .unwrap();
    assert!(r.counts_close());
    assert!(r.density >= 0.95);
}

#[test]
fn sato_tate_rationals() {
    let r = sato_tate_test(delta(), 20_000, 40).unwrap();
    let mass: f64 = r.bins.iter().map(|b| b.expected).sum();
    assert!((mass - 1.0).abs() < 1e-12);
    assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), r.samples);
    for i in 0..20 {
        let (a, b) = (&r.bins[i], &r.bins[39 - i]);
        assert!((a.expected - b.expected).abs() < 1e-12);
    }
    assert!(r.all_in_interval);
}

#[test]
fn odd_power_divisibility() {
    let r = odd_prime_power_suite(delta(), 1000, 10, 0.1, &Factorizer::default()).unwrap();
    assert_eq!(r.failures, 0);
    assert!(r.rows.iter().all(|row| row.cube_direct != Some(false)));
}
