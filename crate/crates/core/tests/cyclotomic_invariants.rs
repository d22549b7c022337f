use std::sync::OnceLock;

use eigenlpf::arith::{divisors, euler_phi, sieve_primes};
use eigenlpf::cyclotomic::{
    classify_prime_divisors, lucas_terms, norm_phi_ratio, phi_value, psi_polynomial,
    ClassifyOptions, LucasParameters,
};
use eigenlpf::eigenform::{delta_series, eigenform_table};
use eigenlpf::quadfield::field_from_prime;
use eigenlpf::{CoefficientTable, Error, FormDescriptor};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

fn tables() -> &'static Vec<CoefficientTable> {
    static T: OnceLock<Vec<CoefficientTable>> = OnceLock::new();
    T.get_or_init(|| {
        FormDescriptor::all()
            .map(|f| eigenform_table(f, 1000).unwrap())
            .collect()
    })
}

#[test]
fn product_of_phi_values_is_the_prime_power_coefficient() {
    for t in tables() {
        for &p in sieve_primes(50).unwrap().primes() {
            let lp = LucasParameters::from_table(t, p).unwrap();
            for n in 2..=30u64 {
                let prod = divisors(n)
                    .into_iter()
                    .filter(|&d| d > 1)
                    .fold(BigInt::one(), |acc, d| acc * phi_value(&lp, d).unwrap());
                assert_eq!(prod, t.coeff_prime_power(p, (n - 1) as u32).unwrap());
            }
        }
    }
}

#[test]
fn phi_depends_only_on_a_squared_and_q() {
    for t in tables() {
        for &p in sieve_primes(50).unwrap().primes() {
            let lp = LucasParameters::from_table(t, p).unwrap();
            let a2 = &lp.a * &lp.a;
            for n in 3..=30u64 {
                let v = phi_value(&lp, n).unwrap();
                assert_eq!(v, phi_value(&lp.negated(), n).unwrap());
                assert_eq!(v, psi_polynomial(n).unwrap().eval(&a2, &lp.q));
            }
        }
    }
}

#[test]
fn psi_degree_is_half_phi() {
    for n in 3..=200u64 {
        assert_eq!(psi_polynomial(n).unwrap().degree() as u64, euler_phi(n) / 2);
    }
    assert!(psi_polynomial(2).is_err());
}

#[test]
fn a_p_divides_odd_prime_powers() {
    for t in tables() {
        for &p in sieve_primes(1000).unwrap().primes() {
            let lp = LucasParameters::from_table(t, p).unwrap();
            let u = lucas_terms(&lp, 22);
            for m in 1..=10usize {
                assert!(u[2 * m + 2].is_multiple_of(&lp.a), "{} p={p} m={m}", t.form());
            }
        }
    }
}

#[test]
fn primitive_primes_are_plus_minus_one_and_schinzel_holds() {
    let t = delta_series(60).unwrap();
    for &p in sieve_primes(50).unwrap().primes() {
        let lp = LucasParameters::from_table(&t, p).unwrap().normalized();
        let field = field_from_prime(&t, p).unwrap().field;
        for n in 7..=24u64 {
            let cv = classify_prime_divisors(&lp, n, &field, &ClassifyOptions::default()).unwrap();
            assert!(cv.congruence_violations().is_empty(), "p={p} n={n}");
            assert_eq!(cv.schinzel_violations().count(), 0, "p={p} n={n}");
            for c in &cv.cofactors {
                assert!(c.certified_primitive && c.residue_consistent(n));
            }
        }
    }
}

#[test]
fn degenerate_lucas_term_is_reported() {
    let lp = LucasParameters::new(BigInt::from(0), BigInt::from(5));
    assert!(matches!(phi_value(&lp, 4), Err(Error::Degenerate { d: 2, .. })));
}

#[test]
fn norm_ratio_trends_toward_one() {
    let t = delta_series(20).unwrap();
    let primes: Vec<u64> = sieve_primes(199)
        .unwrap()
        .primes_in(31, 199)
        .to_vec();
    let dev: Vec<f64> = primes
        .iter()
        .map(|&n| (norm_phi_ratio(&t, 11, n).unwrap() - 1.0).abs())
        .collect();
    // Least-squares slope of the deviation against n is negative.
    let xs: Vec<f64> = primes.iter().map(|&n| n as f64).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = dev.iter().sum::<f64>() / dev.len() as f64;
    let slope: f64 = xs.iter().zip(&dev).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>();
    assert!(slope < 0.0);

    let r210 = (norm_phi_ratio(&t, 11, 210).unwrap() - 1.0).abs();
    let r211 = (norm_phi_ratio(&t, 11, 211).unwrap() - 1.0).abs();
    assert!(r210 > r211);
}
