use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::lpf::Lpf;
use crate::arith::{divisors, euler_phi, smallest_divisor_geq3};
use crate::cyclotomic::{phi_largest_prime, ClassifyOptions, LucasParameters};
use crate::eigenform::{CoefficientTable, HECKE_FIELD_DEGREE};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Theorem6Row {
    pub p: u64,
    pub n: u64,
    pub n3: u64,
    /// a_f(p^(n-1)) = 0; no largest prime is reported.
    pub zero: bool,
    /// Decimal digits of |a_f(p^(n-1))|.
    pub digits: u64,
    pub lpf: Lpf,
    pub lpf_phi_n3: Lpf,
    pub loglog_p: f64,
    /// 16 (k-1) d_f phi(n3)
    pub denominator: u64,
    /// loglog p / denominator
    pub explicit_shape: f64,
    /// Whether the certified lower bound on P already exceeds the explicit shape.
    pub above_shape: bool,
    /// The constant c(n3, f) is not computed.
    pub constant: &'static str,
    /// a_f(p) = 0 and n odd: P(a_f(p^(n-1))) must equal p.
    pub zero_ap_check: Option<bool>,
}

/// Rows (p, n) with P(a_f(p^(n-1))) = max_{d | n, d > 1} P(Phi_d(alpha_p, beta_p)).
pub fn theorem6_report(
    table: &CoefficientTable,
    p_list: &[u64],
    n_list: &[u64],
    options: &ClassifyOptions,
) -> Result<Vec<Theorem6Row>> {
    if let Some(&n) = n_list.iter().find(|&&n| n < 3) {
        return Err(Error::domain(format!("n = {n} is below 3")));
    }
    let k = table.form().weight() as u64;
    let mut rows = Vec::new();
    for &p in p_list {
        let params = LucasParameters::from_table(table, p)?;
        let mut phi_cache: BTreeMap<u64, Result<Lpf>> = BTreeMap::new();
        let mut lpf_phi = |d: u64| -> Result<Lpf> {
            phi_cache
                .entry(d)
                .or_insert_with(|| {
                    phi_largest_prime(&params, d, options).map(|(value, exact)| Lpf { value, exact })
                })
                .as_ref()
                .map(Clone::clone)
                .map_err(|e| Error::Precondition(e.to_string()))
        };
        for &n in n_list {
            let n3 = smallest_divisor_geq3(n)?;
            let value = table.coeff_prime_power(p, (n - 1) as u32)?;
            let loglog_p = (p as f64).ln().ln();
            let denominator = 16 * (k - 1) * HECKE_FIELD_DEGREE as u64 * euler_phi(n3);
            let explicit_shape = loglog_p / denominator as f64;
            let ap_zero = table.coefficient(p)?.is_zero();
            if value.is_zero() {
                rows.push(Theorem6Row {
                    p,
                    n,
                    n3,
                    zero: true,
                    digits: 0,
                    lpf: Lpf::one(),
                    lpf_phi_n3: Lpf::one(),
                    loglog_p,
                    denominator,
                    explicit_shape,
                    above_shape: false,
                    constant: "c(n3,f)",
                    zero_ap_check: None,
                });
                continue;
            }
            let mut lpf = Lpf::one();
            for d in divisors(n).into_iter().filter(|&d| d > 1) {
                lpf = lpf.max(lpf_phi(d)?);
            }
            let lpf_phi_n3 = lpf_phi(n3)?;
            let digits = value.magnitude().to_string().len() as u64;
            let zero_ap_check = (ap_zero && n % 2 == 1)
                .then(|| lpf.exact && lpf.value == BigUint::from(p));
            let above_shape = lpf.exceeds(explicit_shape) == Some(true);
            rows.push(Theorem6Row {
                p,
                n,
                n3,
                zero: false,
                digits,
                lpf,
                lpf_phi_n3,
                loglog_p,
                denominator,
                explicit_shape,
                above_shape,
                constant: "c(n3,f)",
                zero_ap_check,
            });
        }
    }
    Ok(rows)
}
