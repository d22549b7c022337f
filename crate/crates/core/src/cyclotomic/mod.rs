//! Lucas sequences of the pair (alpha_p, beta_p) and the homogeneous
//! cyclotomic values Phi_n(alpha_p, beta_p) that factor a_f(p^(n-1)).

mod classify;
mod lucas;
mod psi;

pub use classify::{
    classify_prime_divisors, norm_phi_ratio, phi_largest_prime, ClassifyOptions, CyclotomicValue, PrimeDivisor,
    SchinzelCheck, UnsplitCofactor,
};
pub use lucas::{
    ln_abs, lucas_term, lucas_terms, phi_value, phi_values_upto, LucasParameters,
};
pub use psi::{cyclotomic_poly, psi_polynomial, PsiPolynomial, PSI_MAX_N};
