use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Factorizer;
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

const SQUAREFREE_TRIAL_BOUND: u64 = 100_000;
const SQUAREFREE_RHO_BUDGET: u64 = 1 << 24;

/// Q(sqrt(d0)) for a squarefree d0 < 0, with ring of integers Z[omega].
///
/// omega = (1 + sqrt(d0))/2 when d0 = 1 mod 4, otherwise omega = sqrt(d0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d0: BigInt,
    disc: BigInt,
    one_mod_four: bool,
}

/// u + v*omega.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub u: BigInt,
    pub v: BigInt,
}

impl FieldElement {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        FieldElement {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn rational(u: impl Into<BigInt>) -> Self {
        FieldElement::new(u, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl QuadraticField {
    /// Field with the given squarefree radicand.
    pub fn new(d0: BigInt) -> Result<Self> {
        if !d0.is_negative() {
            return Err(Error::domain(format!("radicand {d0} is not negative")));
        }
        let (core, s) = squarefree_part(&d0)?;
        if !s.is_one() || core != d0 {
            return Err(Error::domain(format!("{d0} is not squarefree")));
        }
        Ok(Self::from_squarefree(d0))
    }

    pub(crate) fn from_squarefree(d0: BigInt) -> Self {
        let one_mod_four = d0.mod_floor(&BigInt::from(4)) == BigInt::one();
        let disc = if one_mod_four { d0.clone() } else { &d0 * 4 };
        QuadraticField {
            d0,
            disc,
            one_mod_four,
        }
    }

    /// Field of sqrt(d) together with s such that d = s^2 * d0.
    pub fn from_discriminant(d: &BigInt) -> Result<(Self, BigInt)> {
        if !d.is_negative() {
            return Err(Error::domain(format!("{d} is not negative")));
        }
        let (d0, s) = squarefree_part(d)?;
        Ok((Self::from_squarefree(d0), s))
    }

    pub fn d0(&self) -> &BigInt {
        &self.d0
    }

    /// Fundamental discriminant.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn one_mod_four(&self) -> bool {
        self.one_mod_four
    }

    /// Trace of omega.
    pub fn omega_trace(&self) -> BigInt {
        if self.one_mod_four {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    /// Norm of omega.
    pub fn omega_norm(&self) -> BigInt {
        if self.one_mod_four {
            (BigInt::one() - &self.d0) / 4
        } else {
            -&self.d0
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::rational(1)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(&x.u + &y.u, &x.v + &y.v)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement::new(&x.u - &y.u, &x.v - &y.v)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        // omega^2 = t*omega - n
        let vv = &x.v * &y.v;
        let u = &x.u * &y.u - self.omega_norm() * &vv;
        let v = &x.u * &y.v + &x.v * &y.u + self.omega_trace() * vv;
        FieldElement::new(u, v)
    }

    pub fn conjugate(&self, x: &FieldElement) -> FieldElement {
        FieldElement::new(&x.u + self.omega_trace() * &x.v, -&x.v)
    }

    pub fn norm(&self, x: &FieldElement) -> BigInt {
        &x.u * &x.u + self.omega_trace() * &x.u * &x.v + self.omega_norm() * &x.v * &x.v
    }

    pub fn trace(&self, x: &FieldElement) -> BigInt {
        &x.u * 2 + self.omega_trace() * &x.v
    }

    /// Coordinates reduced into [0, m).
    pub fn reduce(&self, x: &FieldElement, m: &BigInt) -> FieldElement {
        FieldElement::new(x.u.mod_floor(m), x.v.mod_floor(m))
    }

    pub fn pow_mod(&self, x: &FieldElement, mut e: BigUint, m: &BigInt) -> FieldElement {
        let mut acc = self.reduce(&self.one(), m);
        let mut base = self.reduce(x, m);
        while !e.is_zero() {
            if e.bit(0) {
                acc = self.reduce(&self.mul(&acc, &base), m);
            }
            base = self.reduce(&self.mul(&base, &base), m);
            e >>= 1u32;
        }
        acc
    }

    /// Complex embedding sending sqrt(d0) to i*sqrt(|d0|), as (re, im).
    pub fn embed(&self, x: &FieldElement) -> (f64, f64) {
        let u = big_to_f64(&x.u);
        let v = big_to_f64(&x.v);
        let root = big_to_f64(&-&self.d0).sqrt();
        if self.one_mod_four {
            (u + v / 2.0, v * root / 2.0)
        } else {
            (u, v * root)
        }
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Write d = s^2 * d0 with d0 squarefree (sign carried by d0).
pub fn squarefree_part(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if d.is_zero() {
        return Err(Error::domain("zero has no squarefree part"));
    }
    let partial = Factorizer::default().factorize_partial(
        &d.abs(),
        SQUAREFREE_TRIAL_BOUND,
        SQUAREFREE_RHO_BUDGET,
    );
    let mut core = d.signum();
    let mut s = BigInt::one();
    for (p, e) in &partial.primes {
        let p = BigInt::from(p.clone());
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    // Unsplit cofactors are non-squares with every prime above the trial
    // bound; below the cube of that bound they are products of two
    // distinct primes.
    let cube = BigUint::from(partial.trial_bound).pow(3);
    for c in &partial.cofactors {
        if c >= &cube || c.sqrt().pow(2) == *c {
            return Err(Error::Precondition(format!(
                "squarefree part of {d} undetermined: cofactor {c} did not split"
            )));
        }
        core *= BigInt::from(c.clone());
    }
    Ok((core, s))
}

/// Q(alpha_p) for a table form, with alpha_p written over the field's integral basis.
#[derive(Debug, Clone)]
pub struct AlphaField {
    pub field: QuadraticField,
    pub alpha: FieldElement,
    /// a_f(p)^2 - 4 p^(k-1).
    pub d: BigInt,
    /// d = s^2 * d0.
    pub s: BigInt,
    pub a: BigInt,
    pub q: BigInt,
    pub p: u64,
    pub weight: u32,
}

impl AlphaField {
    pub fn beta(&self) -> FieldElement {
        self.field.conjugate(&self.alpha)
    }
}

/// alpha_p = (a_f(p) + sqrt(D))/2 in Q(sqrt(D)), D = a_f(p)^2 - 4p^(k-1).
pub fn field_from_prime(table: &CoefficientTable, p: u64) -> Result<AlphaField> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let a = table.coefficient(p)?.clone();
    let q = table.hecke_norm(p);
    let d: BigInt = &a * &a - &q * 4;
    if d.is_zero() {
        return Err(Error::domain(format!(
            "a_f({p}) = {a} is +-2p^((k-1)/2): alpha_p is rational"
        )));
    }
    let (field, s) = QuadraticField::from_discriminant(&d)?;
    let alpha = if field.one_mod_four {
        FieldElement::new((&a - &s) / 2, s.clone())
    } else {
        FieldElement::new(&a / 2, &s / 2)
    };
    debug_assert_eq!(field.norm(&alpha), q);
    debug_assert_eq!(field.trace(&alpha), a);
    Ok(AlphaField {
        field,
        alpha,
        d,
        s,
        a,
        q,
        p,
        weight: table.form().weight(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    #[test]
    fn delta_at_two() {
        let t = delta_series(10).unwrap();
        let f = field_from_prime(&t, 2).unwrap();
        assert_eq!(f.d, BigInt::from(-7616));
        assert_eq!(f.field.d0(), &BigInt::from(-119));
        assert_eq!(f.s, BigInt::from(8));
        assert_eq!(f.field.disc(), &BigInt::from(-119));
        assert_eq!(f.field.norm(&f.alpha), BigInt::from(2048));
        assert_eq!(f.field.trace(&f.alpha), BigInt::from(-24));
    }

    #[test]
    fn ring_operations_on_gaussian_integers() {
        let k = QuadraticField::new(BigInt::from(-1)).unwrap();
        assert_eq!(k.disc(), &BigInt::from(-4));
        let x = FieldElement::new(2, 1);
        let y = FieldElement::new(2, -1);
        assert_eq!(k.mul(&x, &y), FieldElement::rational(5));
        assert_eq!(k.conjugate(&x), y);
        assert_eq!(k.norm(&x), BigInt::from(5));
    }

    #[test]
    fn rejects_non_squarefree_radicand() {
        assert!(QuadraticField::new(BigInt::from(-12)).is_err());
        assert!(QuadraticField::new(BigInt::from(5)).is_err());
    }

    #[test]
    fn embedding_of_omega() {
        let k = QuadraticField::new(BigInt::from(-3)).unwrap();
        let (re, im) = k.embed(&FieldElement::new(0, 1));
        assert!((re - 0.5).abs() < 1e-15);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
