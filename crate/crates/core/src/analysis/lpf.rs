use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::arith::Factorizer;

/// Rho iterations spent before falling back to an unbounded factorization.
pub const LPF_RHO_BUDGET: u64 = 1 << 26;

/// Largest prime factor, or a certified lower bound when factoring stopped early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lpf {
    #[serde(serialize_with = "crate::serde_big::uint")]
    pub value: BigUint,
    pub exact: bool,
}

impl Lpf {
    pub fn one() -> Self {
        Lpf {
            value: BigUint::one(),
            exact: true,
        }
    }

    /// P(x) > t, decided from the lower bound when possible.
    pub fn exceeds(&self, t: f64) -> Option<bool> {
        let v = num_traits::ToPrimitive::to_f64(&self.value).unwrap_or(f64::INFINITY);
        if v > t {
            Some(true)
        } else if self.exact {
            Some(false)
        } else {
            None
        }
    }

    /// Maximum of two largest-prime values; exact only when both are.
    pub fn max(self, other: Lpf) -> Lpf {
        let exact = self.exact && other.exact;
        Lpf {
            value: self.value.max(other.value),
            exact,
        }
    }
}

/// P(x) with the convention P(0) = P(+-1) = 1.
pub fn lpf_of(x: &BigInt, factorizer: &Factorizer, rho_budget: u64) -> Lpf {
    let partial = factorizer.factorize_partial(x, factorizer.trial_bound, rho_budget);
    let (value, exact) = partial.largest_prime_lower_bound();
    Lpf { value, exact }
}

/// P(x), factoring to completion if the budgeted attempt leaves the comparison with t open.
pub fn lpf_deciding(x: &BigInt, t: f64, factorizer: &Factorizer) -> Lpf {
    let first = lpf_of(x, factorizer, LPF_RHO_BUDGET);
    if first.exceeds(t).is_some() {
        return first;
    }
    Lpf {
        value: factorizer.factorize(x).largest_prime(),
        exact: true,
    }
}
