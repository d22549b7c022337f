use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};

/// Factor a machine integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativeSuite {
    pub n: u64,
    pub mobius: i8,
    pub euler_phi: u64,
    pub omega: u32,
    pub sigma_k: u32,
    #[serde(serialize_with = "crate::serde_big::uint")]
    pub sigma: BigUint,
}

/// mu(n), phi(n), omega(n) and sigma_k(n) for `n >= 1`.
pub fn multiplicative_suite(n: u64, k: u32) -> Result<MultiplicativeSuite> {
    if n == 0 {
        return Err(Error::domain("multiplicative functions need n >= 1"));
    }
    let fac = factor_u64(n);
    let mobius = if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    };
    let euler_phi = fac
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1));
    let sigma = fac.iter().fold(BigUint::one(), |acc, &(p, e)| {
        let pk = Pow::pow(BigUint::from(p), k);
        let mut term = BigUint::one();
        let mut s = BigUint::one();
        for _ in 0..e {
            term *= &pk;
            s += &term;
        }
        acc * s
    });
    Ok(MultiplicativeSuite {
        n,
        mobius,
        euler_phi,
        omega: fac.len() as u32,
        sigma_k: k,
        sigma,
    })
}

pub fn mobius(n: u64) -> i8 {
    let fac = factor_u64(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

pub fn omega(n: u64) -> u32 {
    factor_u64(n).len() as u32
}

/// Least divisor of `n` that is at least 3.
pub fn smallest_divisor_geq3(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain(format!("n = {n} has no divisor >= 3")));
    }
    Ok((3..=n).find(|d| n % d == 0).unwrap())
}
