use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::lpf::{lpf_of, Lpf, LPF_RHO_BUDGET};
use super::threshold::ThresholdSpec;
use crate::arith::{sieve_primes, Factorizer};
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct PrimePowerRow {
    pub p: u64,
    /// a_f(p) = 0: the statement does not apply.
    pub skipped: bool,
    /// a_f(p) | a_f(p^(2m+1)) for every 1 <= m <= m_max.
    pub divides_all: bool,
    pub lpf_ap: Lpf,
    /// thm1 threshold at p (p >= 5), implied for every odd power.
    pub thm1_threshold: Option<f64>,
    pub implied_pass: Option<bool>,
    /// P(a_f(p^3)) >= P(a_f(p)) checked by factoring a_f(p^3), when it fits in 127 bits.
    pub cube_direct: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimePowerReport {
    pub form: String,
    pub x_max: u64,
    pub m_max: u32,
    pub epsilon: f64,
    pub checks: u64,
    pub failures: u64,
    pub rows: Vec<PrimePowerRow>,
}

/// Divisibility a_f(p) | a_f(p^(2m+1)) for p <= x_max, 1 <= m <= m_max, and the
/// largest-prime bound it transfers from a_f(p) to the odd powers.
pub fn odd_prime_power_suite(
    table: &CoefficientTable,
    x_max: u64,
    m_max: u32,
    epsilon: f64,
    factorizer: &Factorizer,
) -> Result<PrimePowerReport> {
    if x_max > table.limit() {
        return Err(Error::Range {
            what: "prime power suite".into(),
            needed: x_max,
            limit: table.limit(),
        });
    }
    let spec = ThresholdSpec::Thm1 { epsilon };
    spec.validate()?;
    let primes = if x_max >= 2 {
        sieve_primes(x_max)?.primes().to_vec()
    } else {
        Vec::new()
    };
    let weight = table.form().weight();
    let rows: Vec<PrimePowerRow> = primes
        .par_iter()
        .map(|&p| {
            let ap = table.get(p).unwrap().clone();
            if ap.is_zero() {
                return PrimePowerRow {
                    p,
                    skipped: true,
                    divides_all: true,
                    lpf_ap: Lpf::one(),
                    thm1_threshold: None,
                    implied_pass: None,
                    cube_direct: None,
                };
            }
            let q = table.hecke_norm(p);
            // U_j = a_f(p^(j-1)); odd powers 2m+1 are U_{2m+2}.
            let mut prev = BigInt::zero();
            let mut cur = BigInt::one();
            let mut divides_all = true;
            let mut cube = None;
            for j in 1..=(2 * m_max + 1) {
                let next = &ap * &cur - &q * &prev;
                prev = cur;
                cur = next;
                // cur = a_f(p^j)
                if j % 2 == 1 && j >= 3 {
                    divides_all &= cur.is_multiple_of(&ap);
                    if j == 3 {
                        cube = Some(cur.clone());
                    }
                }
            }
            let lpf_ap = lpf_of(&ap, factorizer, LPF_RHO_BUDGET);
            let thm1_threshold = (p >= spec.floor()).then(|| spec.eval(p as f64, weight));
            let implied_pass = thm1_threshold.and_then(|t| lpf_ap.exceeds(t));
            let cube_direct = cube.filter(|c| c.bits() < 127 && ap.abs() > BigInt::one()).map(|c| {
                let big = factorizer.factorize(&c).largest_prime();
                lpf_ap.exact && big >= lpf_ap.value
            });
            PrimePowerRow {
                p,
                skipped: false,
                divides_all,
                lpf_ap,
                thm1_threshold,
                implied_pass,
                cube_direct,
            }
        })
        .collect();
    let active = rows.iter().filter(|r| !r.skipped).count() as u64;
    let failures = rows.iter().filter(|r| !r.divides_all).count() as u64;
    Ok(PrimePowerReport {
        form: table.form().name(),
        x_max,
        m_max,
        epsilon,
        checks: active * m_max as u64,
        failures,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    #[test]
    fn divisibility_for_delta() {
        let t = delta_series(300).unwrap();
        let r = odd_prime_power_suite(&t, 300, 10, 0.1, &Factorizer::default()).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.rows.iter().all(|row| row.cube_direct != Some(false)));
        assert!(r.rows.iter().any(|row| row.cube_direct == Some(true)));
    }
}
