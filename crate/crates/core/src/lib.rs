//! Exact Fourier coefficients of the level-1 Hecke eigenforms with rational
//! integer coefficients, and the arithmetic needed to study the largest prime
//! factor of those coefficients.
//!
//! * [`arith`]: sieving, primality, factorization, multiplicative functions.
//! * [`eigenform`]: q-expansions of the six eigenforms of weight 12..=26.
//! * [`cyclotomic`]: Lucas sequences and homogeneous cyclotomic values.
//! * [`quadfield`]: arithmetic in the imaginary quadratic field of `alpha_p`.
//! * [`analysis`]: density scans and bound comparisons.

pub mod analysis;
pub mod arith;
pub mod cyclotomic;
pub mod eigenform;
mod error;
pub mod oracles;
pub mod quadfield;
pub(crate) mod serde_big;

pub use error::{Error, Result};
pub use eigenform::{CoefficientTable, FormDescriptor};
pub use arith::{Factorization, Factorizer};
