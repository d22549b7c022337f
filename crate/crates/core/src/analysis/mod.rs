//! Desk-scale measurements of the largest-prime-factor statements: density
//! scans over primes and integers, Sato-Tate statistics, congruence counts,
//! odd prime powers, and the explicit cyclotomic bounds.

mod congruence;
mod density;
mod lpf;
mod pafp;
mod prime_power;
mod sato_tate;
mod theorem6;
mod threshold;

pub use congruence::{congruence_density, CongruenceReport};
pub use density::{
    lpf_density, natural_density_over_n, zero_census, DensityReport, FailingEntry, ScanDomain,
    FAILING_CAP, NATURAL_SCAN_FLOOR,
};
pub use lpf::{lpf_deciding, lpf_of, Lpf, LPF_RHO_BUDGET};
pub use pafp::{
    pafp_suite, wieferich_scan, PafpReport, PafpRow, WieferichRow, WieferichScan,
    DEFAULT_N_FLOOR,
};
pub use prime_power::{odd_prime_power_suite, PrimePowerReport, PrimePowerRow};
pub use sato_tate::{normalized_coefficients, sato_tate_cdf, sato_tate_test, SatoTateBin, SatoTateReport};
pub use theorem6::{theorem6_report, Theorem6Row};
pub use threshold::{cafn2_c1, GChoice, ThresholdSpec};
