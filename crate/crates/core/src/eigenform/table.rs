use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::form::FormDescriptor;
use super::ntt::multiply_series;
use super::series::{eisenstein_series, eta24};
use crate::arith::{factor_u64, is_prime_u64};
use crate::error::{Error, Result};

/// Exact coefficients a_f(1..=limit) of one eigenform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    form: FormDescriptor,
    limit: u64,
    // coeffs[n] = a_f(n); coeffs[0] is unused and kept at zero
    coeffs: Vec<BigInt>,
}

impl CoefficientTable {
    /// Build a table from a_f(1), a_f(2), ... in order.
    pub fn from_coefficients(form: FormDescriptor, values: Vec<BigInt>) -> Self {
        let limit = values.len() as u64;
        let mut coeffs = Vec::with_capacity(values.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(values);
        CoefficientTable {
            form,
            limit,
            coeffs,
        }
    }

    pub fn form(&self) -> FormDescriptor {
        self.form
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// a_f(n) for 1 <= n <= limit.
    pub fn get(&self, n: u64) -> Option<&BigInt> {
        if n == 0 || n > self.limit {
            None
        } else {
            Some(&self.coeffs[n as usize])
        }
    }

    pub fn coefficient(&self, n: u64) -> Result<&BigInt> {
        self.get(n).ok_or_else(|| Error::Range {
            what: format!("a_f({n})"),
            needed: n,
            limit: self.limit,
        })
    }

    /// (n, a_f(n)) for n = 1..=limit.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().enumerate().skip(1).map(|(n, c)| (n as u64, c))
    }

    /// p^(k-1) for this form's weight.
    pub fn hecke_norm(&self, p: u64) -> BigInt {
        BigInt::from(p).pow(self.form.weight() - 1)
    }

    /// a_f(p^m) from a_f(p) by the three-term Hecke recurrence.
    pub fn coeff_prime_power(&self, p: u64, m: u32) -> Result<BigInt> {
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let ap = self.coefficient(p)?.clone();
        Ok(prime_power_from(&ap, &self.hecke_norm(p), m))
    }

    /// a_f(n) for any n whose prime factors lie within the table, by multiplicativity.
    pub fn coeff_at(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::domain("coefficients are indexed from 1"));
        }
        factor_u64(n)
            .into_iter()
            .try_fold(BigInt::one(), |acc, (p, e)| {
                Ok(acc * self.coeff_prime_power(p, e)?)
            })
    }
}

/// U_{m+1} for the sequence U_0 = 0, U_1 = 1, U_{j+1} = a U_j - q U_{j-1}.
pub(crate) fn prime_power_from(ap: &BigInt, q: &BigInt, m: u32) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for _ in 0..m {
        let next = ap * &cur - q * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// tau(1..=limit) from (prod (1-q^n)^3)^8.
pub fn delta_series(limit: u64) -> Result<CoefficientTable> {
    if limit < 1 {
        return Err(Error::domain("table limit must be at least 1"));
    }
    Ok(CoefficientTable::from_coefficients(
        FormDescriptor::DELTA,
        eta24(limit as usize),
    ))
}

/// Coefficients of the normalized eigenform of the given weight, as Delta * E4^a * E6^b.
pub fn eigenform_table(form: FormDescriptor, limit: u64) -> Result<CoefficientTable> {
    let delta = delta_series(limit)?;
    let (a, b) = form.eisenstein_exponents();
    if a == 0 && b == 0 {
        return Ok(delta);
    }
    let lim = limit as usize;
    // Delta as a series starting at q^0 (index 0 = 0).
    let delta_series: Vec<BigInt> = delta.coeffs.clone();
    let e4 = eisenstein_series(4, lim)?;
    let e6 = eisenstein_series(6, lim)?;
    let mut factors: Vec<&[BigInt]> = vec![&delta_series];
    for _ in 0..a {
        factors.push(&e4);
    }
    for _ in 0..b {
        factors.push(&e6);
    }
    let product = multiply_series(&factors, lim);
    debug_assert!(product[0].is_zero());
    let values = product.into_iter().skip(1).collect::<Vec<_>>();
    if !values[0].is_one() {
        return Err(Error::Precondition(format!(
            "weight {} product is not normalized: a(1) = {}",
            form.weight(),
            values[0]
        )));
    }
    Ok(CoefficientTable::from_coefficients(form, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::series::mul_truncated;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn delta_examples() {
        let t = delta_series(12).unwrap();
        assert_eq!(t.get(1), Some(&b(1)));
        assert_eq!(t.get(2), Some(&b(-24)));
        assert_eq!(t.get(3), Some(&b(252)));
        assert_eq!(t.get(6), Some(&b(-6048)));
        assert_eq!(t.get(5), Some(&b(4830)));
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(13), None);
        assert!(delta_series(0).is_err());
    }

    #[test]
    fn higher_weight_examples() {
        let f16 = eigenform_table(FormDescriptor::new(16).unwrap(), 10).unwrap();
        assert_eq!(f16.get(1), Some(&b(1)));
        assert_eq!(f16.get(2), Some(&b(216)));
        let f18 = eigenform_table(FormDescriptor::new(18).unwrap(), 10).unwrap();
        assert_eq!(f18.get(2), Some(&b(-528)));
    }

    #[test]
    fn ntt_route_matches_schoolbook_route() {
        let limit = 300;
        let delta = delta_series(limit).unwrap();
        let mut d: Vec<BigInt> = vec![BigInt::zero()];
        d.extend(delta.iter().map(|(_, c)| c.clone()));
        let e4 = eisenstein_series(4, limit as usize).unwrap();
        let e6 = eisenstein_series(6, limit as usize).unwrap();
        for form in FormDescriptor::all() {
            let (a, bb) = form.eisenstein_exponents();
            let mut acc = d.clone();
            for _ in 0..a {
                acc = mul_truncated(&acc, &e4, limit as usize);
            }
            for _ in 0..bb {
                acc = mul_truncated(&acc, &e6, limit as usize);
            }
            let t = eigenform_table(form, limit).unwrap();
            for n in 1..=limit {
                assert_eq!(t.get(n).unwrap(), &acc[n as usize], "{form} n={n}");
            }
        }
    }

    #[test]
    fn prime_power_queries() {
        let t = delta_series(100).unwrap();
        assert_eq!(t.coeff_prime_power(2, 0).unwrap(), b(1));
        assert_eq!(t.coeff_prime_power(2, 1).unwrap(), b(-24));
        assert_eq!(t.coeff_prime_power(2, 2).unwrap(), b(-1472));
        assert_eq!(t.get(4), Some(&b(-1472)));
        for p in [2u64, 3, 5, 7, 11, 13] {
            let ap = t.get(p).unwrap();
            assert_eq!(t.coeff_prime_power(p, 2).unwrap(), ap * ap - t.hecke_norm(p));
        }
        assert!(t.coeff_prime_power(101, 1).is_err());
        assert!(t.coeff_prime_power(4, 1).is_err());
    }

    #[test]
    fn coeff_at_uses_multiplicativity() {
        let t = delta_series(1000).unwrap();
        assert_eq!(t.coeff_at(1).unwrap(), b(1));
        assert_eq!(
            t.coeff_at(12).unwrap(),
            t.get(4).unwrap() * t.get(3).unwrap()
        );
        assert_eq!(&t.coeff_at(1000).unwrap(), t.get(1000).unwrap());
        // 2 * 1009 needs a_f(1009), beyond the table
        assert!(matches!(t.coeff_at(2018), Err(Error::Range { .. })));
    }
}
