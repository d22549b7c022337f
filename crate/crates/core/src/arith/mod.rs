//! Exact integer utilities: sieving, primality, factorization and the
//! classical multiplicative functions.

mod factor;
pub(crate) mod montgomery;
mod multiplicative;
mod primality;
mod residue;
mod sieve;

pub use factor::{
    factorize, largest_prime_factor, valuation, Factorization, Factorizer, PartialFactorization,
    DEFAULT_TRIAL_BOUND,
};
pub(crate) use factor::valuation_unchecked;
pub use multiplicative::{
    divisors, euler_phi, factor_u64, mobius, multiplicative_suite, omega, smallest_divisor_geq3,
    MultiplicativeSuite,
};
pub use primality::{is_prime_u128, is_prime_u64, is_probable_prime, PrimalityConfig};
pub use residue::{jacobi, kronecker, kronecker_symbol, sqrt_mod_prime};
pub(crate) use residue::{mul_mod, pow_mod, residue};
pub use sieve::{sieve_primes, PrimeSieve};
