use num_bigint::BigInt;
use serde::Serialize;

use super::field::{field_from_prime, FieldElement};
use super::ideal::{ideal_valuation, split_prime};
use crate::arith::{euler_phi, omega, valuation_unchecked};
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

/// gamma = alpha/beta is a root of unity iff a^2 is 0, q, 2q, 3q or 4q.
pub(crate) fn gamma_is_root_of_unity(a: &BigInt, q: &BigInt) -> bool {
    let a2 = a * a;
    (0..=4).any(|j| a2 == q * j)
}

pub fn is_root_of_unity_gamma(table: &CoefficientTable, p: u64) -> Result<bool> {
    let a = table.coefficient(p)?;
    Ok(gamma_is_root_of_unity(a, &table.hecke_norm(p)))
}

/// nu_p(a_f(p)), checked against the Deligne cap k/2 - 1.
pub fn nu_f_p(table: &CoefficientTable, p: u64) -> Result<u32> {
    let a = table.coefficient(p)?;
    let k = table.form().weight();
    let nu = valuation_unchecked(a, &p.into())
        .ok_or_else(|| Error::domain(format!("a_f({p}) = 0")))?;
    if nu > k / 2 - 1 {
        return Err(Error::Precondition(format!(
            "nu_p(a_f({p})) = {nu} exceeds k/2 - 1"
        )));
    }
    Ok(nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightComparison {
    /// Sum over all places of the field.
    pub definition: f64,
    /// ((k-1)/2 - nu_{f,p}) log p.
    pub closed_form: f64,
    pub archimedean: f64,
}

/// Absolute logarithmic height of gamma_p, from the definition and in closed form.
pub fn height_gamma(table: &CoefficientTable, p: u64) -> Result<HeightComparison> {
    if p <= 3 {
        return Err(Error::domain("height comparison needs p > 3"));
    }
    let af = field_from_prime(table, p)?;
    if gamma_is_root_of_unity(&af.a, &af.q) {
        return Err(Error::domain(format!("gamma_{p} is a root of unity")));
    }
    let nu = nu_f_p(table, p)?;
    let k = &af.field;
    let beta = af.beta();

    // The two complex embeddings send gamma to |alpha|/|beta| and its inverse in modulus.
    let (ar, ai) = k.embed(&af.alpha);
    let (br, bi) = k.embed(&beta);
    let log_ratio = (ar.hypot(ai) / br.hypot(bi)).ln();
    let archimedean = log_ratio.max(0.0) + (-log_ratio).max(0.0);

    // gamma = alpha^2 / p^(k-1); only ideals above p can appear in the denominator.
    let alpha2 = k.mul(&af.alpha, &af.alpha);
    let mut finite = 0.0;
    for ideal in split_prime(k, p)? {
        let num = ideal_valuation(k, &alpha2, &ideal).expect("alpha is non-zero") as i64;
        let den = ideal_valuation(k, &FieldElement::rational(af.q.clone()), &ideal)
            .expect("q is non-zero") as i64;
        let v = num - den;
        if v < 0 {
            finite += (-v) as f64 * (ideal.norm as f64).ln();
        }
    }
    let kk = af.weight as f64;
    Ok(HeightComparison {
        definition: (archimedean + finite) / 2.0,
        closed_form: ((kk - 1.0) / 2.0 - nu as f64) * (p as f64).ln(),
        archimedean,
    })
}

/// 1/(4d (log* d)^3) with log* = max(1, log).
pub fn height_lower_bound(d: u32) -> f64 {
    let d = d as f64;
    1.0 / (4.0 * d * d.ln().max(1.0).powi(3))
}

/// (k - 1 - 2 nu_{f,p}) log p / (52 r) * phi(n)^2 / 2^omega(n).
pub fn pafp_bound(table: &CoefficientTable, p: u64, n: u64, r: i64) -> Result<f64> {
    if r <= 0 {
        return Err(Error::domain(format!("r = {r} must be positive")));
    }
    if p <= 3 {
        return Err(Error::domain("the bound needs p > 3"));
    }
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if is_root_of_unity_gamma(table, p)? {
        return Err(Error::domain(format!("gamma_{p} is a root of unity")));
    }
    let nu = nu_f_p(table, p)?;
    let k = table.form().weight() as f64;
    let phi = euler_phi(n) as f64;
    Ok((k - 1.0 - 2.0 * nu as f64) * (p as f64).ln() / (52.0 * r as f64) * phi * phi
        / 2f64.powi(omega(n) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;
    use num_traits::Zero;

    #[test]
    fn root_of_unity_cases() {
        let q = BigInt::from(2048);
        assert!(gamma_is_root_of_unity(&BigInt::zero(), &q));
        assert!(!gamma_is_root_of_unity(&BigInt::from(-24), &q));
        // a^2 = q (sixth root), a^2 = 3q (twelfth root).
        assert!(gamma_is_root_of_unity(&BigInt::from(9), &BigInt::from(81)));
        assert!(gamma_is_root_of_unity(&BigInt::from(9), &BigInt::from(27)));
    }

    #[test]
    fn definition_matches_closed_form() {
        let t = delta_series(100).unwrap();
        for p in [5u64, 7, 11, 13, 97] {
            let h = height_gamma(&t, p).unwrap();
            assert!(h.archimedean < 1e-12);
            assert!((h.definition - h.closed_form).abs() <= 1e-9 * h.closed_form);
            assert!(h.definition >= height_lower_bound(2));
        }
    }

    #[test]
    fn bound_for_prime_n() {
        let t = delta_series(20).unwrap();
        let b = pafp_bound(&t, 11, 101, 1).unwrap();
        let expect = 11.0 * 11f64.ln() / 52.0 * 100.0 * 100.0 / 2.0;
        assert!((b - expect).abs() < 1e-9 * expect);
        assert!(pafp_bound(&t, 11, 101, 0).is_err());
        assert_eq!(height_lower_bound(2), 0.125);
    }
}
