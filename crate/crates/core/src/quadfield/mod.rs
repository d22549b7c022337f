//! Arithmetic in the imaginary quadratic field Q(alpha_p), where alpha_p is a
//! root of x^2 - a_f(p) x + p^(k-1).

mod class_number;
mod field;
mod height;
mod ideal;
mod wieferich;

pub use class_number::{class_number, class_number_of_discriminant, CLASS_NUMBER_DISC_LIMIT};
pub use field::{field_from_prime, squarefree_part, AlphaField, FieldElement, QuadraticField};
pub use height::{
    height_gamma, height_lower_bound, is_root_of_unity_gamma, nu_f_p, pafp_bound,
    HeightComparison,
};
pub use ideal::{ideal_valuation, split_prime, PrimeIdealDescriptor, SplitType};
pub use wieferich::{wieferich_valuation, wieferich_valuation_via_beta};
