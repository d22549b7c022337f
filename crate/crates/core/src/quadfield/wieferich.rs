use num_bigint::{BigInt, BigUint};

use super::field::{AlphaField, FieldElement};
use super::height::gamma_is_root_of_unity;
use super::ideal::{ideal_valuation, PrimeIdealDescriptor};
use crate::error::{Error, Result};

const MAX_PRECISION: u32 = 1 << 12;

/// nu_P(gamma_p^(N(P)-1) - 1), computed as nu_P(alpha^(2(N-1)) - p^((k-1)(N-1))).
pub fn wieferich_valuation(af: &AlphaField, ideal: &PrimeIdealDescriptor) -> Result<u32> {
    valuation_through(af, &af.alpha, ideal)
}

/// The same valuation computed from beta_p = conj(alpha_p), i.e. through
/// gamma_p^(-1): nu_P(beta^(2(N-1)) - p^((k-1)(N-1))).
pub fn wieferich_valuation_via_beta(
    af: &AlphaField,
    ideal: &PrimeIdealDescriptor,
) -> Result<u32> {
    valuation_through(af, &af.beta(), ideal)
}

fn valuation_through(af: &AlphaField, root: &FieldElement, ideal: &PrimeIdealDescriptor) -> Result<u32> {
    if ideal.q == af.p {
        return Err(Error::Precondition(format!(
            "prime ideal lies above p = {}",
            af.p
        )));
    }
    if gamma_is_root_of_unity(&af.a, &af.q) {
        return Err(Error::domain(format!(
            "gamma_{} is a root of unity",
            af.p
        )));
    }
    let k = &af.field;
    let exp = BigUint::from(ideal.norm - 1);
    let qi = BigInt::from(ideal.q);
    let mut m = 2u32;
    loop {
        let modulus = qi.pow(m);
        let lhs = k.pow_mod(root, &exp * 2u32, &modulus);
        let rhs = af.q.modpow(&BigInt::from(exp.clone()), &modulus);
        let x = k.reduce(&k.sub(&lhs, &FieldElement::rational(rhs)), &modulus);
        // x agrees with the true value modulo q^m O_K = P^(e m) (P')^(...),
        // so any valuation below e*m is exact.
        if let Some(v) = ideal_valuation(k, &x, ideal) {
            if v < ideal.e * m {
                return Ok(v);
            }
        }
        if m >= MAX_PRECISION {
            return Err(Error::domain(format!(
                "valuation at q = {} exceeds {} digits of precision",
                ideal.q, MAX_PRECISION
            )));
        }
        m *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;
    use crate::quadfield::{field_from_prime, split_prime};

    #[test]
    fn fermat_property_and_dual_path() {
        let t = delta_series(20).unwrap();
        let af = field_from_prime(&t, 11).unwrap();
        for q in [2u64, 3, 5, 7, 13, 17, 19, 23, 29, 31] {
            for ideal in split_prime(&af.field, q).unwrap() {
                let a = wieferich_valuation(&af, &ideal).unwrap();
                let b = wieferich_valuation_via_beta(&af, &ideal).unwrap();
                assert!(a >= 1);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rejects_ideal_above_p() {
        let t = delta_series(20).unwrap();
        let af = field_from_prime(&t, 11).unwrap();
        let ideal = &split_prime(&af.field, 11).unwrap()[0];
        assert!(matches!(
            wieferich_valuation(&af, ideal),
            Err(Error::Precondition(_))
        ));
    }
}
