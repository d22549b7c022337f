use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::lucas::{lucas_terms, ln_abs, phi_from_terms, LucasParameters};
use std::sync::OnceLock;

use crate::arith::{divisors, euler_phi, Factorizer, PartialFactorization, PrimeSieve};
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};
use crate::quadfield::{
    height_gamma, ideal_valuation, is_root_of_unity_gamma, nu_f_p, split_prime, FieldElement,
    QuadraticField, SplitType,
};

/// Effort spent factoring Phi_n before unsplit cofactors are reported.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub trial_bound: u64,
    /// Second trial-division pass, over primes = +-1 (mod n) only.
    pub congruence_bound: u64,
    pub rho_budget: u64,
    pub seed: u64,
}

impl ClassifyOptions {
    /// Larger rho budget, for reports on a handful of values.
    pub fn thorough() -> Self {
        ClassifyOptions {
            rho_budget: 1 << 24,
            ..Self::default()
        }
    }
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            trial_bound: 100_000,
            congruence_bound: CONGRUENCE_SIEVE_LIMIT,
            rho_budget: 1 << 15,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeDivisor {
    #[serde(serialize_with = "crate::serde_big::uint")]
    pub prime: BigUint,
    pub exponent: u32,
    pub residue_mod_n: u64,
}

impl PrimeDivisor {
    /// prime = +-1 (mod n).
    pub fn is_plus_minus_one(&self, n: u64) -> bool {
        self.residue_mod_n == 1 % n || self.residue_mod_n == n - 1
    }
}

/// A composite factor of Phi_n that did not split within the budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnsplitCofactor {
    #[serde(serialize_with = "crate::serde_big::uint")]
    pub value: BigUint,
    pub residue_mod_n: u64,
    /// gcd(value, n * prod_{d | n, d < n} U_d) = 1, so every prime factor is primitive.
    pub certified_primitive: bool,
}

impl UnsplitCofactor {
    /// A product of primes that are all +-1 (mod n) is itself +-1 (mod n).
    pub fn residue_consistent(&self, n: u64) -> bool {
        self.residue_mod_n == 1 % n || self.residue_mod_n == n - 1
    }
}

/// Schinzel's inequality nu_P(Phi_n) <= nu_P(n O_K) at one non-primitive ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchinzelCheck {
    pub q: u64,
    pub kind: SplitType,
    pub root: Option<u64>,
    pub nu_phi: u32,
    pub nu_n: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclotomicValue {
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub value: BigInt,
    pub primitive: Vec<PrimeDivisor>,
    pub non_primitive: Vec<PrimeDivisor>,
    pub cofactors: Vec<UnsplitCofactor>,
    pub schinzel: Vec<SchinzelCheck>,
}

impl CyclotomicValue {
    pub fn is_complete(&self) -> bool {
        self.cofactors.is_empty()
    }

    /// Prime factors q not dividing n with q != +-1 (mod n).
    pub fn congruence_violations(&self) -> Vec<&PrimeDivisor> {
        let n = self.n;
        self.primitive
            .iter()
            .chain(&self.non_primitive)
            .filter(|d| !(BigUint::from(n) % &d.prime).is_zero())
            .filter(|d| !d.is_plus_minus_one(n))
            .collect()
    }

    /// Schinzel checks that fail at unramified ideals.
    pub fn schinzel_violations(&self) -> impl Iterator<Item = &SchinzelCheck> {
        self.schinzel
            .iter()
            .filter(|c| !c.holds && c.kind != SplitType::Ramified)
    }
}

/// Factor Phi_n(alpha, beta) and split its prime divisors into primitive and
/// non-primitive ones; check Schinzel's inequality at the non-primitive ideals.
///
/// `field` must be Q(sqrt(a^2 - 4q)).
pub fn classify_prime_divisors(
    params: &LucasParameters,
    n: u64,
    field: &QuadraticField,
    options: &ClassifyOptions,
) -> Result<CyclotomicValue> {
    if n <= 6 {
        return Err(Error::Precondition(format!(
            "classification needs n > 6, got {n}"
        )));
    }
    if !params.is_coprime() {
        return Err(Error::Precondition(format!(
            "a = {} and q = {} are not coprime",
            params.a, params.q
        )));
    }
    let u = lucas_terms(params, n);
    let value = phi_from_terms(params, &u, n)?;
    let proper: Vec<u64> = divisors(n).into_iter().filter(|&d| d < n).collect();
    let is_non_primitive = |l: &BigUint| {
        (BigUint::from(n) % l).is_zero()
            || proper
                .iter()
                .any(|&d| (u[d as usize].magnitude() % l).is_zero())
    };

    let partial = factor_phi(&value, n, options);
    let nb = BigUint::from(n);
    let residue = |x: &BigUint| (x % &nb).to_u64().unwrap();

    let mut primitive = Vec::new();
    let mut non_primitive = Vec::new();
    let mut schinzel = Vec::new();
    for (l, e) in &partial.primes {
        let d = PrimeDivisor {
            prime: l.clone(),
            exponent: *e,
            residue_mod_n: residue(l),
        };
        if is_non_primitive(l) {
            let q = l.to_u64().ok_or_else(|| {
                Error::Precondition(format!("non-primitive prime {l} exceeds 64 bits"))
            })?;
            schinzel.extend(schinzel_checks(field, &value, n, q)?);
            non_primitive.push(d);
        } else {
            primitive.push(d);
        }
    }

    let mut certificate = BigInt::from(n);
    for &d in &proper {
        certificate *= &u[d as usize];
    }
    let certificate = certificate.magnitude().clone();
    let cofactors = partial
        .cofactors
        .iter()
        .map(|c| UnsplitCofactor {
            value: c.clone(),
            residue_mod_n: residue(c),
            certified_primitive: c.gcd(&certificate).is_one(),
        })
        .collect();

    Ok(CyclotomicValue {
        n,
        value,
        primitive,
        non_primitive,
        cofactors,
        schinzel,
    })
}

const CONGRUENCE_SIEVE_LIMIT: u64 = 10_000_000;

fn congruence_sieve(limit: u64) -> std::sync::Arc<PrimeSieve> {
    static SHARED: OnceLock<std::sync::Arc<PrimeSieve>> = OnceLock::new();
    if limit <= CONGRUENCE_SIEVE_LIMIT {
        SHARED
            .get_or_init(|| std::sync::Arc::new(PrimeSieve::new(CONGRUENCE_SIEVE_LIMIT).unwrap()))
            .clone()
    } else {
        std::sync::Arc::new(PrimeSieve::new(limit).unwrap())
    }
}

/// Trial division by all small primes, then by primes = +-1 (mod n) up to
/// the congruence bound, then budgeted rho on what is left.
pub(crate) fn factor_phi(value: &BigInt, n: u64, options: &ClassifyOptions) -> PartialFactorization {
    let factorizer = Factorizer::with_seed(options.seed);
    let first = factorizer.factorize_partial(value, options.trial_bound, 0);
    let mut primes = first.primes;
    let mut cofactors = Vec::new();
    let sieve = (options.congruence_bound > options.trial_bound)
        .then(|| congruence_sieve(options.congruence_bound));
    for mut c in first.cofactors {
        if let Some(sieve) = &sieve {
            for &l in sieve.primes_in(options.trial_bound + 1, options.congruence_bound) {
                let r = l % n;
                if r != 1 && r != n - 1 {
                    continue;
                }
                let mut e = 0;
                while (&c % l).is_zero() {
                    c /= l;
                    e += 1;
                }
                if e > 0 {
                    primes.push((BigUint::from(l), e));
                }
            }
        }
        if c.is_one() {
            continue;
        }
        let rest = factorizer.factorize_partial(
            &BigInt::from(c),
            options.trial_bound,
            options.rho_budget,
        );
        primes.extend(rest.primes);
        cofactors.extend(rest.cofactors);
    }
    primes.sort();
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in primes {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    cofactors.sort();
    PartialFactorization {
        value: value.clone(),
        primes: merged,
        cofactors,
        trial_bound: options.trial_bound,
    }
}

fn schinzel_checks(
    field: &QuadraticField,
    value: &BigInt,
    n: u64,
    q: u64,
) -> Result<Vec<SchinzelCheck>> {
    let phi = FieldElement::rational(value.clone());
    let n_elem = FieldElement::rational(n);
    Ok(split_prime(field, q)?
        .into_iter()
        .map(|ideal| {
            let nu_phi = ideal_valuation(field, &phi, &ideal).unwrap_or(u32::MAX);
            let nu_n = ideal_valuation(field, &n_elem, &ideal).unwrap_or(u32::MAX);
            SchinzelCheck {
                q,
                kind: ideal.kind,
                root: ideal.root,
                nu_phi,
                nu_n,
                holds: nu_phi <= nu_n,
            }
        })
        .collect())
}

/// Certified lower bound on P(Phi_n(alpha, beta)) and whether it is exact.
pub fn phi_largest_prime(
    params: &LucasParameters,
    n: u64,
    options: &ClassifyOptions,
) -> Result<(BigUint, bool)> {
    let value = super::lucas::phi_value(params, n)?;
    Ok(factor_phi(&value, n, options).largest_prime_lower_bound())
}

/// log|N_K(Phi_n(A_p, B_p))| / (2 h(gamma_p) phi(n)), with A_p, B_p = alpha_p, beta_p
/// divided by p^nu_{f,p}.
pub fn norm_phi_ratio(table: &CoefficientTable, p: u64, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("norm ratio needs n >= 2"));
    }
    if is_root_of_unity_gamma(table, p)? {
        return Err(Error::domain(format!("gamma_{p} is a root of unity")));
    }
    let params = LucasParameters::from_table(table, p)?.normalized();
    if !params.is_coprime() {
        return Err(Error::Precondition(format!(
            "A_{p}, B_{p} are not coprime"
        )));
    }
    let value = super::lucas::phi_value(&params, n)?;
    if value.is_zero() {
        return Err(Error::domain(format!("Phi_{n} vanishes at p = {p}")));
    }
    let h = if p > 3 {
        height_gamma(table, p)?.closed_form
    } else {
        let k = table.form().weight() as f64;
        ((k - 1.0) / 2.0 - nu_f_p(table, p)? as f64) * (p as f64).ln()
    };
    // The norm of a rational integer from a quadratic field is its square.
    let log_norm = 2.0 * ln_abs(&value);
    Ok(log_norm / (2.0 * h * euler_phi(n) as f64))
}
