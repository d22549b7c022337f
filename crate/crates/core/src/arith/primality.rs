//! Primality testing.
//!
//! Below 2^64 a fixed Miller-Rabin witness set is deterministic. Above that,
//! a number is declared prime after a base-2 strong test, a strong Lucas test
//! with Selfridge parameters, and a configurable number of Miller-Rabin rounds
//! whose bases come from a seeded ChaCha stream.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::montgomery::Mont128;
use super::residue::jacobi;

const WITNESSES_64: [u128; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Settings for the probabilistic part of the test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimalityConfig {
    pub seed: u64,
    pub rounds: u32,
}

impl Default for PrimalityConfig {
    fn default() -> Self {
        PrimalityConfig { seed: 1, rounds: 40 }
    }
}

fn strong_probable_prime_128(m: &Mont128, base: u128) -> bool {
    let n = m.modulus();
    let base = base % n;
    if base == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let one = m.one();
    let minus_one = m.sub(0, one);
    let mut x = m.pow(m.to_mont(base), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Deterministic test for `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p as u64 {
            return true;
        }
        if n % p as u64 == 0 {
            return false;
        }
    }
    if n < 97 * 97 {
        return true;
    }
    let m = Mont128::new(n as u128);
    WITNESSES_64
        .iter()
        .all(|&a| strong_probable_prime_128(&m, a))
}

/// Test for `n < 2^127` using native arithmetic.
pub fn is_prime_u128(n: u128, cfg: &PrimalityConfig) -> bool {
    if n >> 64 == 0 {
        return is_prime_u64(n as u64);
    }
    assert!(n >> 127 == 0, "use is_probable_prime above 2^127");
    if SMALL_PRIMES.iter().any(|&p| n % p as u128 == 0) {
        return false;
    }
    let m = Mont128::new(n);
    if !strong_probable_prime_128(&m, 2) {
        return false;
    }
    if !strong_lucas(&BigUint::from(n)) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.rounds).all(|_| strong_probable_prime_128(&m, rng.gen_range(2..n - 1)))
}

fn strong_probable_prime_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// `n` must be odd and greater than the small-prime table.
pub(crate) fn strong_lucas(n: &BigUint) -> bool {
    let sq = n.sqrt();
    if &sq * &sq == *n {
        return false;
    }
    // D = 5, -7, 9, -11, ... with (D/n) = -1
    let mut d: i64 = 5;
    let n_small = n.to_u128();
    loop {
        let j = match n_small {
            Some(v) => jacobi(d as i128, v),
            None => jacobi_big(d, n),
        };
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d.unsigned_abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let modn = |v: i64| -> BigUint {
        let m = BigUint::from(v.unsigned_abs()) % n;
        if v < 0 && !m.is_zero() {
            n - m
        } else {
            m
        }
    };
    let dm = modn(d);
    let q = modn((1 - d) / 4);
    // n + 1 = k * 2^s with k odd
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    // Left-to-right binary ladder for U_k, V_k with P = 1.
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q.clone();
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = &u * &v % n;
        v = (&v * &v + n + n - (&qk + &qk) % n) % n;
        qk = &qk * &qk % n;
        if k.bit(i) {
            let u_next = half_mod(&u + &v, n);
            let v_next = half_mod(&dm * &u + &v, n);
            u = u_next % n;
            v = v_next % n;
            qk = &qk * &q % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + n + n - (&qk + &qk) % n) % n;
        if v.is_zero() {
            return true;
        }
        qk = &qk * &qk % n;
    }
    false
}

fn jacobi_big(a: i64, n: &BigUint) -> i8 {
    let r = {
        let m = BigUint::from(a.unsigned_abs()) % n;
        if a < 0 && !m.is_zero() {
            n - m
        } else {
            m
        }
    };
    let mut a = r;
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let n8 = (&n % 8u32).to_u32().unwrap();
        if z % 2 == 1 && (n8 == 3 || n8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Primality certification used throughout the crate.
pub fn is_probable_prime(n: &BigUint, cfg: &PrimalityConfig) -> bool {
    if n.bits() < 127 {
        return is_prime_u128(n.to_u128().unwrap(), cfg);
    }
    if SMALL_PRIMES.iter().any(|&p| (n % p).is_zero()) {
        return false;
    }
    if !strong_probable_prime_big(n, &BigUint::from(2u32)) {
        return false;
    }
    if !strong_lucas(n) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lo = BigUint::from(2u32);
    let hi = n - 1u32;
    (0..cfg.rounds).all(|_| {
        let a = rng.gen_biguint_range(&lo, &hi);
        strong_probable_prime_big(n, &a)
    })
}
