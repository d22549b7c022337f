//! Exact products of long integer series via number-theoretic transforms
//! over several word-sized primes, recombined by the Chinese remainder theorem.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::montgomery::Mont64;
use crate::arith::{factor_u64, is_prime_u64, residue};

const TWO_ADICITY: u32 = 23;

#[derive(Debug, Clone, Copy)]
struct NttPrime {
    p: u64,
    /// generator of the full multiplicative group
    g: u64,
}

/// Primes p = c * 2^23 + 1 just below 2^62, with a primitive root each.
fn ntt_primes(count: usize) -> Vec<NttPrime> {
    static CACHE: OnceLock<Vec<NttPrime>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| {
        let mut out = Vec::new();
        let mut c = ((1u64 << 62) - 1) >> TWO_ADICITY;
        while out.len() < 24 {
            let p = (c << TWO_ADICITY) + 1;
            if is_prime_u64(p) {
                let mut odd_factors: Vec<u64> = factor_u64(c).into_iter().map(|(q, _)| q).collect();
                odd_factors.push(2);
                let g = (2..)
                    .find(|&g| {
                        odd_factors
                            .iter()
                            .all(|&q| crate::arith::pow_mod(g, (p - 1) / q, p) != 1)
                    })
                    .unwrap();
                out.push(NttPrime { p, g });
            }
            c -= 1;
        }
        out
    });
    assert!(count <= cached.len(), "coefficients too large for the prime table");
    cached[..count].to_vec()
}

fn ntt(a: &mut [u64], m: &Mont64, g_mont: u64, invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let p = m.modulus();
    let one = m.to_mont(1);
    let mut len = 2;
    while len <= n {
        let mut w_len = m.pow(g_mont, (p - 1) / len as u64);
        if invert {
            w_len = m.pow(w_len, p - 2);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut w = one;
        for _ in 0..half {
            twiddles.push(w);
            w = m.mul(w, w_len);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let x = *u;
                let y = m.mul(*v, t);
                *u = m.add(x, y);
                *v = m.sub(x, y);
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = m.pow(m.to_mont(n as u64), p - 2);
        for x in a.iter_mut() {
            *x = m.mul(*x, n_inv);
        }
    }
}

/// Product of `factors`, all truncated at q^limit, modulo one prime.
fn product_mod(factors: &[Vec<u64>], limit: usize, prime: NttPrime) -> Vec<u64> {
    let m = Mont64::new(prime.p);
    let g = m.to_mont(prime.g);
    let size = (2 * (limit + 1)).next_power_of_two();
    assert!(size.trailing_zeros() <= TWO_ADICITY, "series too long for NTT primes");
    let to_mont = |f: &Vec<u64>| {
        let mut v: Vec<u64> = f.iter().take(limit + 1).map(|&x| m.to_mont(x)).collect();
        v.resize(size, 0);
        v
    };
    let mut acc = to_mont(&factors[0]);
    for f in &factors[1..] {
        let mut b = to_mont(f);
        ntt(&mut acc, &m, g, false);
        ntt(&mut b, &m, g, false);
        for (x, y) in acc.iter_mut().zip(&b) {
            *x = m.mul(*x, *y);
        }
        ntt(&mut acc, &m, g, true);
        for x in acc[limit + 1..].iter_mut() {
            *x = 0;
        }
    }
    acc.truncate(limit + 1);
    acc.into_iter().map(|x| m.from_mont(x)).collect()
}

/// Exact truncated product of integer series.
///
/// The number of primes is chosen from the a-priori bound
/// |coefficient| <= prod_i sum_j |f_i(j)|, so the CRT lift is always exact.
pub fn multiply_series(factors: &[&[BigInt]], limit: usize) -> Vec<BigInt> {
    assert!(!factors.is_empty());
    let bound_bits: u64 = factors
        .iter()
        .map(|f| {
            f.iter()
                .take(limit + 1)
                .fold(num_bigint::BigUint::zero(), |s, x| s + x.magnitude())
                .bits()
        })
        .sum();
    // one extra bit for the sign, one for slack; each prime exceeds 2^61
    let count = ((bound_bits + 2) as usize).div_ceil(61);
    let primes = ntt_primes(count);
    let residues: Vec<Vec<u64>> = primes
        .iter()
        .map(|&prime| {
            let reduced: Vec<Vec<u64>> = factors
                .iter()
                .map(|f| f.iter().take(limit + 1).map(|x| residue(x, prime.p)).collect())
                .collect();
            product_mod(&reduced, limit, prime)
        })
        .collect();
    crt_symmetric(&residues, &primes.iter().map(|p| p.p).collect::<Vec<_>>())
}

/// Garner reconstruction into the symmetric range (-M/2, M/2].
fn crt_symmetric(residues: &[Vec<u64>], moduli: &[u64]) -> Vec<BigInt> {
    let k = moduli.len();
    // inv[i] = (m_0 ... m_{i-1})^{-1} mod m_i
    let inv: Vec<u64> = (0..k)
        .map(|i| {
            let prod = moduli[..i]
                .iter()
                .fold(1u64, |acc, &m| crate::arith::mul_mod(acc, m % moduli[i], moduli[i]));
            crate::arith::pow_mod(prod, moduli[i] - 2, moduli[i])
        })
        .collect();
    let modulus: BigInt = moduli.iter().map(|&m| BigInt::from(m)).product();
    let half = &modulus >> 1;
    let len = residues[0].len();
    (0..len)
        .map(|idx| {
            let mut digits = Vec::with_capacity(k);
            for i in 0..k {
                let mi = moduli[i];
                // value of the partial mixed-radix sum modulo m_i
                let mut v = 0u64;
                let mut radix = 1u64;
                for (j, &d) in digits.iter().enumerate() {
                    v = (v + crate::arith::mul_mod(d, radix, mi)) % mi;
                    radix = crate::arith::mul_mod(radix, moduli[j] % mi, mi);
                }
                let r = residues[i][idx];
                let diff = (r + mi - v) % mi;
                digits.push(crate::arith::mul_mod(diff, inv[i], mi));
            }
            let mut x = BigInt::zero();
            let mut radix = BigInt::one();
            for (j, &d) in digits.iter().enumerate() {
                x += &radix * d;
                radix *= moduli[j];
            }
            if x > half {
                x - &modulus
            } else {
                x
            }
        })
        .collect()
}
