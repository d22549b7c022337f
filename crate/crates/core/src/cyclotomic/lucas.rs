use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, mobius, valuation_unchecked};
use crate::eigenform::{CoefficientTable, FormDescriptor};
use crate::error::{Error, Result};

/// Symmetric functions a = alpha + beta and q = alpha * beta of a Lucas pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasParameters {
    pub a: BigInt,
    pub q: BigInt,
    /// Form and prime the pair came from, when it came from a table.
    pub source: Option<(FormDescriptor, u64)>,
}

impl LucasParameters {
    pub fn new(a: BigInt, q: BigInt) -> Self {
        LucasParameters { a, q, source: None }
    }

    /// alpha_p, beta_p: the roots of x^2 - a_f(p) x + p^(k-1).
    pub fn from_table(table: &CoefficientTable, p: u64) -> Result<Self> {
        Ok(LucasParameters {
            a: table.coefficient(p)?.clone(),
            q: table.hecke_norm(p),
            source: Some((table.form(), p)),
        })
    }

    pub fn discriminant(&self) -> BigInt {
        &self.a * &self.a - &self.q * 4
    }

    pub fn is_coprime(&self) -> bool {
        self.a.gcd(&self.q).is_one()
    }

    /// Divide alpha and beta by p^nu with nu = nu_p(a): the pair A_p, B_p.
    ///
    /// Only meaningful for table sources; other parameters are returned as is.
    pub fn normalized(&self) -> Self {
        let Some((_, p)) = self.source else {
            return self.clone();
        };
        let pb = BigUint::from(p);
        let nu = match valuation_unchecked(&self.a, &pb) {
            Some(v) => v,
            None => return self.clone(),
        };
        let nu_q = valuation_unchecked(&self.q, &pb).unwrap_or(0);
        let nu = nu.min(nu_q / 2);
        if nu == 0 {
            return self.clone();
        }
        let pn = BigInt::from(p).pow(nu);
        LucasParameters {
            a: &self.a / &pn,
            q: &self.q / (&pn * &pn),
            source: self.source,
        }
    }

    /// The pair (-a, q), i.e. (-alpha, -beta).
    pub fn negated(&self) -> Self {
        LucasParameters {
            a: -&self.a,
            q: self.q.clone(),
            source: self.source,
        }
    }
}

/// U_0 ..= U_n with U_0 = 0, U_1 = 1, U_{d+1} = a U_d - q U_{d-1}.
pub fn lucas_terms(params: &LucasParameters, n: u64) -> Vec<BigInt> {
    let mut u = Vec::with_capacity(n as usize + 1);
    u.push(BigInt::zero());
    if n >= 1 {
        u.push(BigInt::one());
    }
    for d in 2..=n as usize {
        let next = &params.a * &u[d - 1] - &params.q * &u[d - 2];
        u.push(next);
    }
    u
}

/// U_d = (alpha^d - beta^d) / (alpha - beta).
pub fn lucas_term(params: &LucasParameters, d: u64) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::domain("Lucas terms are indexed from 1"));
    }
    Ok(lucas_terms(params, d).pop().unwrap())
}

/// Phi_n(alpha, beta) from precomputed Lucas terms U_0..=U_n.
pub(crate) fn phi_from_terms(params: &LucasParameters, u: &[BigInt], n: u64) -> Result<BigInt> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n) {
        let ud = &u[d as usize];
        match mobius(n / d) {
            0 => continue,
            _ if ud.is_zero() => {
                return Err(Error::Degenerate {
                    a: params.a.to_string(),
                    q: params.q.to_string(),
                    d,
                })
            }
            1 => num *= ud,
            _ => den *= ud,
        }
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero(), "Mobius product of Lucas terms must be integral");
    Ok(quot)
}

/// Homogeneous cyclotomic value Phi_n(alpha, beta) for n >= 2, as
/// prod_{d | n} U_d^mu(n/d).
pub fn phi_value(params: &LucasParameters, n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain("phi_value needs n >= 2"));
    }
    let u = lucas_terms(params, n);
    phi_from_terms(params, &u, n)
}

/// All Phi_d(alpha, beta) for 2 <= d <= n_max, sharing one run of Lucas terms.
pub fn phi_values_upto(params: &LucasParameters, n_max: u64) -> Vec<(u64, Result<BigInt>)> {
    let u = lucas_terms(params, n_max);
    (2..=n_max)
        .map(|n| (n, phi_from_terms(params, &u, n)))
        .collect()
}

/// Natural logarithm of |x| for x != 0.
pub fn ln_abs(x: &BigInt) -> f64 {
    let m = x.abs();
    let bits = m.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(&m).unwrap();
        return f.ln();
    }
    let shift = bits - 64;
    let top: f64 = num_traits::ToPrimitive::to_f64(&(m >> shift)).unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn first_terms() {
        let p = LucasParameters::new(b(7), b(13));
        assert_eq!(lucas_term(&p, 1).unwrap(), b(1));
        assert_eq!(lucas_term(&p, 2).unwrap(), b(7));
        assert_eq!(lucas_term(&p, 3).unwrap(), b(49 - 13));
        assert!(lucas_term(&p, 0).is_err());
    }

    #[test]
    fn terms_are_prime_power_coefficients() {
        let t = delta_series(2000).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let lp = LucasParameters::from_table(&t, p).unwrap();
            let u = lucas_terms(&lp, 8);
            for m in 0..7u32 {
                let pm = p.pow(m);
                assert_eq!(u[m as usize + 1], t.coeff_prime_power(p, m).unwrap());
                if pm <= 2000 {
                    assert_eq!(&u[m as usize + 1], t.get(pm).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_phi_values() {
        let p = LucasParameters::new(b(5), b(11));
        let (a, q) = (b(5), b(11));
        assert_eq!(phi_value(&p, 2).unwrap(), a.clone());
        assert_eq!(phi_value(&p, 3).unwrap(), &a * &a - &q);
        assert_eq!(phi_value(&p, 4).unwrap(), &a * &a - &q * 2);
        assert_eq!(phi_value(&p, 6).unwrap(), &a * &a - &q * 3);
        assert!(phi_value(&p, 1).is_err());
    }

    #[test]
    fn degenerate_pair_is_reported() {
        // a = 0 makes every even-index term vanish
        let p = LucasParameters::new(b(0), b(3));
        assert!(matches!(phi_value(&p, 4), Err(Error::Degenerate { d: 2, .. })));
        assert!(phi_value(&p, 3).is_ok());
    }

    #[test]
    fn normalization_divides_out_p() {
        let t = delta_series(10).unwrap();
        // tau(2) = -24 = -2^3 * 3
        let lp = LucasParameters::from_table(&t, 2).unwrap().normalized();
        assert_eq!(lp.a, b(-3));
        assert_eq!(lp.q, b(32));
        assert!(lp.is_coprime());
    }

    #[test]
    fn log_of_large_values() {
        let x = BigInt::from(3).pow(2000);
        assert!((ln_abs(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
        assert!((ln_abs(&b(-1000)) - 1000f64.ln()).abs() < 1e-12);
    }
}
