//! q-expansions of the normalized level-1 eigenforms with rational
//! coefficients (weights 12, 16, 18, 20, 22, 26).

mod cache;
mod form;
mod ntt;
mod series;
mod table;

pub use cache::{load_table, parse_table, read_header, render_table, save_table, TableHeader};
pub use form::{FormDescriptor, HECKE_FIELD_DEGREE, LEVEL, SUPPORTED_WEIGHTS};
pub use ntt::multiply_series;
pub use series::{eisenstein_series, eta_power_series, mul_truncated, EtaVariant};
pub use table::{delta_series, eigenform_table, CoefficientTable};
