//! Slow, independent reference computations used to cross-check the main
//! algorithms in tests and in the acceptance suite.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::kronecker;
use crate::quadfield::{FieldElement, PrimeIdealDescriptor, QuadraticField, SplitType};

fn divisor_power_sum(n: u64, k: u32) -> BigInt {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

fn schoolbook(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// tau(0..=limit) (tau(0) = 0) as (E4^3 - E6^2)/1728, by schoolbook products.
pub fn delta_from_eisenstein(limit: usize) -> Vec<BigInt> {
    let len = limit + 1;
    let mut e4 = vec![BigInt::one(); len];
    let mut e6 = vec![BigInt::one(); len];
    for n in 1..len {
        e4[n] = divisor_power_sum(n as u64, 3) * 240;
        e6[n] = divisor_power_sum(n as u64, 5) * -504;
    }
    let e4_2 = schoolbook(&e4, &e4, len);
    let e4_3 = schoolbook(&e4_2, &e4, len);
    let e6_2 = schoolbook(&e6, &e6, len);
    e4_3.iter()
        .zip(&e6_2)
        .map(|(a, b)| {
            let (q, r) = (a - b).div_rem(&BigInt::from(1728));
            assert!(r.is_zero(), "E4^3 - E6^2 is divisible by 1728");
            q
        })
        .collect()
}

/// tau(0..=limit) by multiplying out q * prod (1 - q^n)^24 one factor at a time.
pub fn delta_brute_force(limit: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); limit + 1];
    if limit >= 1 {
        s[1] = BigInt::one();
    }
    for n in 1..limit {
        for _ in 0..24 {
            for i in (n..=limit).rev() {
                let t = s[i - n].clone();
                s[i] -= t;
            }
        }
    }
    s
}

/// Class number of a negative fundamental discriminant from Dirichlet's formula
/// h = -(w / 2|d|) sum_{a=1}^{|d|-1} (d/a) a.
pub fn class_number_analytic(d: i64) -> u64 {
    assert!(d < 0);
    let m = d.unsigned_abs();
    let w: i64 = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..m)
        .map(|a| kronecker(d, a) as i64 * a as i64)
        .sum();
    let h = -w * s;
    assert_eq!(h % (2 * m as i64), 0);
    (h / (2 * m as i64)) as u64
}

/// Negative fundamental discriminant test by trial division.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let squarefree = |mut n: u64| {
        let mut q = 2;
        while q * q <= n {
            if n % (q * q) == 0 {
                return false;
            }
            while n % q == 0 {
                n /= q;
            }
            q += 1;
        }
        true
    };
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// pi(x) by trial division.
pub fn prime_count_trial(x: u64) -> u64 {
    (2..=x)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .count() as u64
}

/// #{p <= x, p != 691 : 1 + p^11 = 0 (mod 691)}.
pub fn ramanujan_691_count(x: u64) -> u64 {
    (2..=x)
        .filter(|&n| n != 691 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .filter(|&p| {
            let r = (0..11).fold(1u64, |acc, _| acc * (p % 691) % 691);
            (1 + r) % 691 == 0
        })
        .count() as u64
}

/// nu_P(x) by membership in P^j: Hensel-lifted roots for split primes, the
/// content for inert primes and the norm for ramified ones.
pub fn hensel_valuation(
    field: &QuadraticField,
    x: &FieldElement,
    ideal: &PrimeIdealDescriptor,
) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let q = BigInt::from(ideal.q);
    let nu = |n: &BigInt| {
        let mut n = n.abs();
        let mut v = 0u32;
        while !n.is_zero() && n.is_multiple_of(&q) {
            n /= &q;
            v += 1;
        }
        v
    };
    match ideal.kind {
        SplitType::Inert => Some(if x.u.is_zero() {
            nu(&x.v)
        } else if x.v.is_zero() {
            nu(&x.u)
        } else {
            nu(&x.u).min(nu(&x.v))
        }),
        SplitType::Ramified => Some(nu(&field.norm(x))),
        SplitType::Split => {
            let bound = nu(&field.norm(x));
            let t = field.omega_trace();
            let n = field.omega_norm();
            let mut r = BigInt::from(ideal.root.unwrap());
            let mut modulus = q.clone();
            let mut j = 0;
            while j < bound {
                if !(&x.u + &x.v * &r).mod_floor(&modulus).is_zero() {
                    break;
                }
                j += 1;
                // Lift r to a root modulo q^(j+1).
                modulus *= &q;
                let f = &r * &r - &t * &r + &n;
                let df: BigInt = &r * 2 - &t;
                let inv = df
                    .mod_floor(&modulus)
                    .extended_gcd(&modulus)
                    .x
                    .mod_floor(&modulus);
                r = (&r - f * inv).mod_floor(&modulus);
            }
            // Membership in P^j for j = bound is also exact at the top.
            Some(j.min(bound))
        }
    }
}

/// Squarefree check by trial division, for small radicands.
pub fn is_squarefree_small(n: &BigInt) -> bool {
    let n = n.abs().to_u64().expect("small radicand");
    let mut q = 2u64;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_on_small_cases() {
        let a = delta_from_eisenstein(30);
        let b = delta_brute_force(30);
        assert_eq!(a, b);
        assert_eq!(a[2], BigInt::from(-24));
        assert_eq!(class_number_analytic(-3), 1);
        assert_eq!(class_number_analytic(-4), 1);
        assert_eq!(class_number_analytic(-23), 3);
        assert_eq!(prime_count_trial(100), 25);
        assert!(is_fundamental_discriminant(-4) && !is_fundamental_discriminant(-16));
    }
}
