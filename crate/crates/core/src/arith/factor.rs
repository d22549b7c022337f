//! Integer factorization: trial division, then primality certification and
//! Brent's variant of Pollard rho on the remaining cofactors.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::montgomery::Mont128;
use super::primality::{is_probable_prime, PrimalityConfig};
use super::sieve::PrimeSieve;

/// Trial division bound applied before any rho splitting.
pub const DEFAULT_TRIAL_BOUND: u64 = 10_000;

fn small_primes(bound: u64) -> &'static [u64] {
    static TABLE: OnceLock<PrimeSieve> = OnceLock::new();
    let s = TABLE.get_or_init(|| PrimeSieve::new(DEFAULT_TRIAL_BOUND).unwrap());
    if bound <= DEFAULT_TRIAL_BOUND {
        s.primes_in(2, bound)
    } else {
        panic!("small_primes only covers the default trial bound")
    }
}

/// Signed integer with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::serde_big::int")]
    value: BigInt,
    sign: i8,
    #[serde(serialize_with = "crate::serde_big::factor_list")]
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_parts(value: BigInt, mut factors: Vec<(BigUint, u32)>) -> Self {
        factors.sort();
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let sign = match value.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        Factorization {
            value,
            sign,
            factors: merged,
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// (prime, exponent) pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Largest prime factor, or 1 for 0 and units.
    pub fn largest_prime(&self) -> BigUint {
        self.factors
            .last()
            .map(|(p, _)| p.clone())
            .unwrap_or_else(BigUint::one)
    }

    pub fn reassemble(&self) -> BigInt {
        if self.sign == 0 {
            return BigInt::zero();
        }
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        BigInt::from_biguint(if self.sign < 0 { Sign::Minus } else { Sign::Plus }, mag)
    }
}

/// Result of a factorization attempt that may stop early.
///
/// `cofactors` are composite numbers that resisted splitting within the
/// budget; every prime dividing them exceeds `trial_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub value: BigInt,
    pub primes: Vec<(BigUint, u32)>,
    pub cofactors: Vec<BigUint>,
    pub trial_bound: u64,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactors.is_empty()
    }

    /// Certified lower bound on the largest prime factor, and whether it is exact.
    pub fn largest_prime_lower_bound(&self) -> (BigUint, bool) {
        let found = self
            .primes
            .iter()
            .map(|(p, _)| p.clone())
            .max()
            .unwrap_or_else(BigUint::one);
        if self.cofactors.is_empty() {
            (found, true)
        } else {
            (found.max(BigUint::from(self.trial_bound + 1)), false)
        }
    }
}

/// Factorization engine with a fixed trial bound and primality seed.
#[derive(Debug, Clone, Copy)]
pub struct Factorizer {
    pub trial_bound: u64,
    pub primality: PrimalityConfig,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            trial_bound: DEFAULT_TRIAL_BOUND,
            primality: PrimalityConfig::default(),
        }
    }
}

impl Factorizer {
    pub fn with_seed(seed: u64) -> Self {
        Factorizer {
            primality: PrimalityConfig {
                seed,
                ..PrimalityConfig::default()
            },
            ..Factorizer::default()
        }
    }

    pub fn factorize(&self, n: &BigInt) -> Factorization {
        let partial = self.run(n, self.trial_bound, None);
        debug_assert!(partial.cofactors.is_empty());
        Factorization::from_parts(partial.value, partial.primes)
    }

    /// Factor with trial division to `trial_bound` and at most `rho_budget`
    /// rho iterations per composite cofactor.
    pub fn factorize_partial(
        &self,
        n: &BigInt,
        trial_bound: u64,
        rho_budget: u64,
    ) -> PartialFactorization {
        self.run(n, trial_bound.max(self.trial_bound), Some(rho_budget))
    }

    fn run(&self, n: &BigInt, trial_bound: u64, budget: Option<u64>) -> PartialFactorization {
        let mut primes = Vec::new();
        let mut cofactors = Vec::new();
        let mut m = n.magnitude().clone();
        if m.is_zero() || m.is_one() {
            return PartialFactorization {
                value: n.clone(),
                primes,
                cofactors,
                trial_bound,
            };
        }
        m = trial_divide(m, trial_bound, &mut primes);
        let bound_sq = BigUint::from(trial_bound) * BigUint::from(trial_bound);
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if c < bound_sq || self.is_prime(&c) {
                primes.push((c, 1));
                continue;
            }
            match self.split(&c, budget) {
                Some(d) => {
                    let e = &c / &d;
                    stack.push(d);
                    stack.push(e);
                }
                None => cofactors.push(c),
            }
        }
        primes.sort();
        let mut merged: Vec<(BigUint, u32)> = Vec::new();
        for (p, e) in primes {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        cofactors.sort();
        PartialFactorization {
            value: n.clone(),
            primes: merged,
            cofactors,
            trial_bound,
        }
    }

    fn is_prime(&self, c: &BigUint) -> bool {
        is_probable_prime(c, &self.primality)
    }

    /// Find a non-trivial divisor of the composite `c`.
    fn split(&self, c: &BigUint, budget: Option<u64>) -> Option<BigUint> {
        let sq = num_integer::Roots::sqrt(c);
        if &sq * &sq == *c {
            return Some(sq);
        }
        let native = c.bits() < 127;
        let mut spent = 0u64;
        let mut round_cap = 1u64 << 14;
        for seed in 1u64.. {
            let cap = match budget {
                Some(b) if spent >= b => return None,
                Some(b) => round_cap.min(b - spent),
                None => round_cap,
            };
            let found = if native {
                rho_brent_u128(c.to_u128().unwrap(), seed as u128, cap).map(BigUint::from)
            } else {
                rho_brent_big(c, seed, cap)
            };
            spent += cap;
            if found.is_some() {
                return found;
            }
            round_cap = (round_cap * 2).min(1 << 26);
        }
        unreachable!()
    }
}

fn trial_divide(mut m: BigUint, bound: u64, primes: &mut Vec<(BigUint, u32)>) -> BigUint {
    if bound <= DEFAULT_TRIAL_BOUND {
        trial_divide_by(&mut m, small_primes(bound), primes);
    } else {
        let sieve = PrimeSieve::new(bound).unwrap();
        trial_divide_by(&mut m, sieve.primes(), primes);
    }
    m
}

fn trial_divide_by(m: &mut BigUint, list: &[u64], primes: &mut Vec<(BigUint, u32)>) {
    if let Some(mut v) = m.to_u128() {
        for &p in list {
            let p128 = p as u128;
            if p128 * p128 > v {
                break;
            }
            let mut e = 0;
            while v % p128 == 0 {
                v /= p128;
                e += 1;
            }
            if e > 0 {
                primes.push((BigUint::from(p), e));
            }
        }
        *m = BigUint::from(v);
        return;
    }
    let mut digits = m.to_u32_digits();
    for &p in list {
        let p32 = p as u32;
        let mut e = 0;
        while rem_u32(&digits, p32) == 0 {
            div_u32_in_place(&mut digits, p32);
            e += 1;
        }
        if e > 0 {
            primes.push((BigUint::from(p), e));
            if digits.len() <= 4 {
                *m = BigUint::new(digits);
                return trial_divide_by(m, list, primes);
            }
        }
    }
    *m = BigUint::new(digits);
}

fn rem_u32(digits: &[u32], p: u32) -> u32 {
    let p = p as u64;
    digits
        .iter()
        .rev()
        .fold(0u64, |r, &d| ((r << 32) | d as u64) % p) as u32
}

fn div_u32_in_place(digits: &mut Vec<u32>, p: u32) {
    let p = p as u64;
    let mut r = 0u64;
    for d in digits.iter_mut().rev() {
        let cur = (r << 32) | *d as u64;
        *d = (cur / p) as u32;
        r = cur % p;
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
}

const RHO_BATCH: u64 = 128;

/// Brent's cycle-finding rho on `x -> x^2 + c` over Montgomery residues.
fn rho_brent_u128(n: u128, c: u128, max_iter: u64) -> Option<u128> {
    if n % 2 == 0 {
        return Some(2);
    }
    let m = Mont128::new(n);
    let cm = m.to_mont(c);
    let f = |x: u128| m.add(m.mul(x, x), cm);
    let mut y = m.to_mont(2);
    let mut x = y;
    let mut ys = y;
    let mut q = m.one();
    let mut g = 1u128;
    let mut r = 1u64;
    let mut iters = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..RHO_BATCH.min(r - k) {
                y = f(y);
                q = m.mul(q, x.abs_diff(y));
            }
            g = q.gcd(&n);
            k += RHO_BATCH;
        }
        iters += 2 * r;
        r *= 2;
        if g == 1 && iters > max_iter {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_brent_big(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..RHO_BATCH.min(r - k) {
                y = f(&y);
                q = q * diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += RHO_BATCH;
        }
        iters += 2 * r;
        r *= 2;
        if g.is_one() && iters > max_iter {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// Complete factorization with the default engine.
pub fn factorize(n: &BigInt) -> Factorization {
    Factorizer::default().factorize(n)
}

/// Largest prime factor, with P(0) = P(1) = P(-1) = 1.
pub fn largest_prime_factor(n: &BigInt) -> BigUint {
    factorize(n).largest_prime()
}

/// q-adic valuation of `n`; `None` stands for +infinity (n = 0).
pub fn valuation(n: &BigInt, q: &BigUint) -> crate::Result<Option<u32>> {
    if !is_probable_prime(q, &PrimalityConfig::default()) {
        return Err(crate::Error::domain(format!("{q} is not prime")));
    }
    Ok(valuation_unchecked(n, q))
}

pub(crate) fn valuation_unchecked(n: &BigInt, q: &BigUint) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (d, r) = m.div_rem(q);
        if !r.is_zero() {
            return Some(v);
        }
        m = d;
        v += 1;
    }
}
