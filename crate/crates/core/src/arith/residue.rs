//! Quadratic residue symbols and modular square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i128, n: u128) -> i8 {
    assert!(n & 1 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a & 1 == 0 {
            a >>= 1;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for any integer `a` and any `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i8 {
    assert!(n >= 1);
    let mut n = n;
    let mut t = 1i8;
    while n % 2 == 0 {
        n /= 2;
        t *= match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    t * jacobi(a as i128, n as u128)
}

/// Kronecker symbol (D/q) for a prime `q` and arbitrary-precision `D`.
pub fn kronecker_symbol(d: &BigInt, q: u64) -> i8 {
    let r = d.mod_floor(&BigInt::from(8 * q)).to_i64().expect("residue fits");
    // (D/q) only depends on D mod 8q.
    kronecker(r, q)
}

/// Square root of `a` modulo an odd prime `q` (Tonelli-Shanks); `None` for non-residues.
pub fn sqrt_mod_prime(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    if q == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (q - 1) / 2, q) != 1 {
        return None;
    }
    if q % 4 == 3 {
        return Some(pow_mod(a, (q + 1) / 4, q));
    }
    let mut s = 0;
    let mut odd = q - 1;
    while odd % 2 == 0 {
        odd /= 2;
        s += 1;
    }
    let z = (2..q).find(|&z| pow_mod(z, (q - 1) / 2, q) == q - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, odd, q);
    let mut t = pow_mod(a, odd, q);
    let mut r = pow_mod(a, (odd + 1) / 2, q);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, q);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), q);
        m = i;
        c = mul_mod(b, b, q);
        t = mul_mod(t, c, q);
        r = mul_mod(r, b, q);
    }
    Some(r)
}

/// Reduce a signed big integer into `0..m`.
pub(crate) fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        0
    } else {
        r.to_u64().expect("residue below modulus")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_criterion(a: i64, q: u64) -> i8 {
        let r = pow_mod(a.rem_euclid(q as i64) as u64, (q - 1) / 2, q);
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(kronecker_symbol(&BigInt::from(-4), 5), 1);
        assert_eq!(kronecker_symbol(&BigInt::from(-4), 7), -1);
        assert_eq!(kronecker_symbol(&BigInt::from(12), 3), 0);
    }

    #[test]
    fn kronecker_at_two() {
        // (D/2) for D = 1 mod 8 is +1, D = 5 mod 8 is -1.
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn jacobi_agrees_with_euler_for_primes() {
        for q in [3u64, 5, 7, 11, 13, 101, 997] {
            for a in -50i64..50 {
                assert_eq!(kronecker(a, q), euler_criterion(a, q), "a={a}, q={q}");
            }
        }
    }

    #[test]
    fn tonelli_shanks_roots() {
        for q in [3u64, 5, 13, 17, 41, 97, 257, 7681, 65537] {
            for a in 0..q.min(300) {
                match sqrt_mod_prime(a, q) {
                    Some(r) => assert_eq!(mul_mod(r, r, q), a),
                    None => assert_eq!(euler_criterion(a as i64, q), -1),
                }
            }
        }
    }
}
