use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{is_prime_u64, sieve_primes};
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub form: String,
    pub x_max: u64,
    pub d: u64,
    pub pi_x: u64,
    /// #{p <= x, p not dividing d : a_f(p) = 0 mod d}
    pub pi_f: u64,
    /// The same count restricted to a_f(p) != 0.
    pub pi_f_star: u64,
    pub ratio: f64,
    /// 1/d when d is prime.
    pub reference: Option<f64>,
}

pub fn congruence_density(table: &CoefficientTable, x_max: u64, d: u64) -> Result<CongruenceReport> {
    if d < 2 {
        return Err(Error::domain(format!("modulus {d} must be at least 2")));
    }
    if x_max > table.limit() {
        return Err(Error::Range {
            what: "congruence scan".into(),
            needed: x_max,
            limit: table.limit(),
        });
    }
    let primes = if x_max >= 2 {
        sieve_primes(x_max)?.primes().to_vec()
    } else {
        Vec::new()
    };
    let db = BigInt::from(d);
    let (mut pi_f, mut pi_f_star) = (0, 0);
    for &p in primes.iter().filter(|&&p| d % p != 0) {
        let a = table.get(p).unwrap();
        if a.is_multiple_of(&db) {
            pi_f += 1;
            if !a.is_zero() {
                pi_f_star += 1;
            }
        }
    }
    let pi_x = primes.len() as u64;
    Ok(CongruenceReport {
        form: table.form().name(),
        x_max,
        d,
        pi_x,
        pi_f,
        pi_f_star,
        ratio: if pi_x == 0 { 0.0 } else { pi_f as f64 / pi_x as f64 },
        reference: is_prime_u64(d).then(|| 1.0 / d as f64),
    })
}
