//! Truncated q-series with exact integer coefficients.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Which power of the Euler product to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaVariant {
    /// prod (1 - q^n), by the pentagonal number theorem.
    Eta,
    /// prod (1 - q^n)^3, by Jacobi's identity.
    Eta3,
}

/// Non-zero terms (exponent, coefficient) of the chosen product up to `limit`.
pub(crate) fn sparse_eta(limit: usize, variant: EtaVariant) -> Vec<(usize, i64)> {
    let mut terms = Vec::new();
    match variant {
        EtaVariant::Eta => {
            terms.push((0, 1));
            for k in 1i64.. {
                let e1 = (k * (3 * k - 1) / 2) as usize;
                if e1 > limit {
                    break;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                terms.push((e1, sign));
                let e2 = (k * (3 * k + 1) / 2) as usize;
                if e2 <= limit {
                    terms.push((e2, sign));
                }
            }
        }
        EtaVariant::Eta3 => {
            for j in 0i64.. {
                let e = (j * (j + 1) / 2) as usize;
                if e > limit {
                    break;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                terms.push((e, sign * (2 * j + 1)));
            }
        }
    }
    terms.sort_unstable();
    terms
}

/// Dense coefficients of prod (1 - q^n) or its cube, truncated at q^limit.
pub fn eta_power_series(limit: usize, variant: EtaVariant) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); limit + 1];
    for (e, c) in sparse_eta(limit, variant) {
        out[e] = BigInt::from(c);
    }
    out
}

/// Multiply `acc` in place by a sparse series with leading term 1 at q^0.
fn sparse_mul_i128(acc: &mut [i128], sparse: &[(usize, i64)]) -> Option<()> {
    debug_assert_eq!(sparse.first(), Some(&(0, 1)));
    for i in (0..acc.len()).rev() {
        let mut s = acc[i];
        for &(e, c) in &sparse[1..] {
            if e > i {
                break;
            }
            s = s.checked_add((c as i128).checked_mul(acc[i - e])?)?;
        }
        acc[i] = s;
    }
    Some(())
}

fn sparse_mul_big(acc: &mut [BigInt], sparse: &[(usize, i64)]) {
    for i in (0..acc.len()).rev() {
        let mut s = acc[i].clone();
        for &(e, c) in &sparse[1..] {
            if e > i {
                break;
            }
            s += &acc[i - e] * c;
        }
        acc[i] = s;
    }
}

/// Coefficients of (prod (1 - q^n)^3)^8 up to q^len-1, i.e. tau(n + 1) at index n.
///
/// Runs in i128 and falls back to exact big integers on overflow.
pub(crate) fn eta24(len: usize) -> Vec<BigInt> {
    let sparse = sparse_eta(len, EtaVariant::Eta3);
    let mut acc = vec![0i128; len];
    acc[0] = 1;
    let fits = (0..8).all(|_| sparse_mul_i128(&mut acc, &sparse).is_some());
    if fits {
        return acc.into_iter().map(BigInt::from).collect();
    }
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::from(1);
    for _ in 0..8 {
        sparse_mul_big(&mut acc, &sparse);
    }
    acc
}

/// sigma_k(n) for n in 0..=limit (index 0 holds 0).
pub(crate) fn sigma_table(limit: usize, k: u32) -> Vec<BigInt> {
    let mut s = vec![0u128; limit + 1];
    let mut overflow = false;
    for d in 1..=limit {
        let dk = (d as u128).checked_pow(k);
        match dk {
            Some(dk) => {
                let mut m = d;
                while m <= limit {
                    match s[m].checked_add(dk) {
                        Some(v) => s[m] = v,
                        None => overflow = true,
                    }
                    m += d;
                }
            }
            None => overflow = true,
        }
    }
    if !overflow {
        return s.into_iter().map(BigInt::from).collect();
    }
    let mut s = vec![BigInt::zero(); limit + 1];
    for d in 1..=limit {
        let dk = BigInt::from(d).pow(k);
        let mut m = d;
        while m <= limit {
            s[m] += &dk;
            m += d;
        }
    }
    s
}

/// E4 = 1 + 240 sum sigma_3(n) q^n or E6 = 1 - 504 sum sigma_5(n) q^n.
pub fn eisenstein_series(weight: u32, limit: usize) -> Result<Vec<BigInt>> {
    let (k, scale) = match weight {
        4 => (3, 240),
        6 => (5, -504),
        w => return Err(Error::domain(format!("Eisenstein weight {w} not in {{4, 6}}"))),
    };
    let mut out = sigma_table(limit, k);
    for c in out.iter_mut() {
        *c *= scale;
    }
    out[0] = BigInt::from(1);
    Ok(out)
}

/// Schoolbook product truncated at q^limit.
pub fn mul_truncated(a: &[BigInt], b: &[BigInt], limit: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); limit + 1];
    for (i, x) in a.iter().enumerate().take(limit + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(limit + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}
