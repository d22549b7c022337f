use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{FieldElement, QuadraticField};
use crate::arith::{is_prime_u64, kronecker_symbol, sqrt_mod_prime, valuation_unchecked};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A prime ideal of O_K above the rational prime q.
///
/// For split and ramified q the ideal is (q, omega - root).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeIdealDescriptor {
    pub q: u64,
    pub kind: SplitType,
    pub root: Option<u64>,
    pub norm: u128,
    pub e: u32,
    pub f: u32,
}

/// The prime ideals above q, conjugate pairs in ascending root order.
pub fn split_prime(field: &QuadraticField, q: u64) -> Result<Vec<PrimeIdealDescriptor>> {
    if !is_prime_u64(q) {
        return Err(Error::domain(format!("{q} is not prime")));
    }
    let kind = match kronecker_symbol(field.disc(), q) {
        1 => SplitType::Split,
        -1 => SplitType::Inert,
        _ => SplitType::Ramified,
    };
    let ideal = |root, norm, e, f| PrimeIdealDescriptor {
        q,
        kind,
        root,
        norm,
        e,
        f,
    };
    if kind == SplitType::Inert {
        return Ok(vec![ideal(None, q as u128 * q as u128, 1, 2)]);
    }
    let roots = omega_roots_mod(field, q);
    Ok(match kind {
        SplitType::Split => roots
            .into_iter()
            .map(|r| ideal(Some(r), q as u128, 1, 1))
            .collect(),
        _ => vec![ideal(Some(roots[0]), q as u128, 2, 1)],
    })
}

/// Roots of x^2 - t x + n mod q, the minimal polynomial of omega.
fn omega_roots_mod(field: &QuadraticField, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let t = field.omega_trace().mod_floor(&qb).to_u64().unwrap();
    let n = field.omega_norm().mod_floor(&qb).to_u64().unwrap();
    let eval = |x: u64| {
        let x = x as u128;
        let q = q as u128;
        (x * x + (q - t as u128) * x + n as u128) % q
    };
    let mut roots: Vec<u64> = if q == 2 {
        (0..2).filter(|&x| eval(x) == 0).collect()
    } else {
        let disc = field.disc().mod_floor(&qb).to_u64().unwrap();
        let s = sqrt_mod_prime(disc, q).expect("disc is a square mod q");
        let inv2 = (q + 1) / 2;
        let r1 = ((t + s) as u128 * inv2 as u128 % q as u128) as u64;
        let r2 = ((t + q - s) as u128 * inv2 as u128 % q as u128) as u64;
        vec![r1, r2]
    };
    roots.sort_unstable();
    roots.dedup();
    debug_assert!(roots.iter().all(|&r| eval(r) == 0));
    roots
}

/// nu_P(x); `None` for x = 0.
pub fn ideal_valuation(
    field: &QuadraticField,
    x: &FieldElement,
    ideal: &PrimeIdealDescriptor,
) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let q = BigUint::from(ideal.q);
    let qi = BigInt::from(ideal.q);
    // x = q^t x' with x' not divisible by q in O_K.
    let mut t = 0u32;
    let mut x = x.clone();
    while x.u.is_multiple_of(&qi) && x.v.is_multiple_of(&qi) {
        x = FieldElement::new(&x.u / &qi, &x.v / &qi);
        t += 1;
    }
    let rest = match ideal.kind {
        SplitType::Inert => 0,
        // P^2 = qO, so nu_P(x') is 0 or 1.
        SplitType::Ramified => u32::from(field.norm(&x).is_multiple_of(&qi)),
        SplitType::Split => {
            // P and its conjugate cannot both divide x', so x' in P carries
            // the whole q-part of the norm.
            let r = ideal.root.expect("split ideal has a root");
            if (&x.u + &x.v * r).is_multiple_of(&qi) {
                valuation_unchecked(&field.norm(&x), &q).unwrap()
            } else {
                0
            }
        }
    };
    Some(ideal.e * t + rest)
}
