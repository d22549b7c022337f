use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::lpf::Lpf;
use crate::arith::{divisors, euler_phi, omega, sieve_primes};
use crate::cyclotomic::{phi_largest_prime, ClassifyOptions, LucasParameters};
use crate::eigenform::{CoefficientTable, HECKE_FIELD_DEGREE};
use crate::error::{Error, Result};
use crate::quadfield::{
    class_number, field_from_prime, is_root_of_unity_gamma, nu_f_p, pafp_bound, split_prime,
    wieferich_valuation, wieferich_valuation_via_beta, SplitType,
};

/// Smallest n compared against the bound unless configured otherwise.
pub const DEFAULT_N_FLOOR: u64 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct WieferichRow {
    pub q: u64,
    pub kind: SplitType,
    pub root: Option<u64>,
    pub norm: u128,
    pub via_alpha: u32,
    pub via_beta: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct WieferichScan {
    pub form: String,
    pub p: u64,
    pub norm_limit: u64,
    pub rows: Vec<WieferichRow>,
    /// Largest valuation observed; recorded, not a proven bound.
    pub r_hat: u32,
    pub all_at_least_one: bool,
    pub paths_agree: bool,
}

/// nu_P(gamma_p^(N(P)-1) - 1) for every prime ideal P not above p with N(P) <= norm_limit.
pub fn wieferich_scan(table: &CoefficientTable, p: u64, norm_limit: u64) -> Result<WieferichScan> {
    let af = field_from_prime(table, p)?;
    if is_root_of_unity_gamma(table, p)? {
        return Err(Error::domain(format!("gamma_{p} is a root of unity")));
    }
    let primes = if norm_limit >= 2 {
        sieve_primes(norm_limit)?.primes().to_vec()
    } else {
        Vec::new()
    };
    let ideals: Vec<_> = primes
        .iter()
        .filter(|&&q| q != p)
        .map(|&q| split_prime(&af.field, q))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .filter(|i| i.norm <= norm_limit as u128)
        .collect();
    let rows = ideals
        .par_iter()
        .map(|ideal| {
            Ok(WieferichRow {
                q: ideal.q,
                kind: ideal.kind,
                root: ideal.root,
                norm: ideal.norm,
                via_alpha: wieferich_valuation(&af, ideal)?,
                via_beta: wieferich_valuation_via_beta(&af, ideal)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WieferichScan {
        form: table.form().name(),
        p,
        norm_limit,
        r_hat: rows.iter().map(|r| r.via_alpha).max().unwrap_or(0),
        all_at_least_one: rows.iter().all(|r| r.via_alpha >= 1 && r.via_beta >= 1),
        paths_agree: rows.iter().all(|r| r.via_alpha == r.via_beta),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PafpRow {
    pub n: u64,
    pub phi_n: u64,
    pub omega_n: u32,
    pub bound: f64,
    /// Certified lower bound on P(a_f(p^(n-1))).
    pub lpf: Lpf,
    /// n >= n_floor; rows below the floor are reported only.
    pub gated: bool,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PafpReport {
    pub form: String,
    pub p: u64,
    pub nu_f_p: u32,
    pub d_f: u32,
    /// Class number of Q(alpha_p), when the discriminant is small enough to count forms.
    pub class_number: Option<u64>,
    pub r_hat: u32,
    pub n_floor: u64,
    pub scan: WieferichScan,
    pub rows: Vec<PafpRow>,
}

/// Empirical r from a Wieferich scan, then the bound compared with P(a_f(p^(n-1)))
/// for 2 <= n <= n_max.
pub fn pafp_suite(
    table: &CoefficientTable,
    p: u64,
    n_max: u64,
    norm_limit: u64,
    n_floor: u64,
    options: &ClassifyOptions,
) -> Result<PafpReport> {
    if p <= 3 {
        return Err(Error::domain("the bound needs p > 3"));
    }
    let scan = wieferich_scan(table, p, norm_limit)?;
    let r_hat = scan.r_hat.max(1);
    let nu = nu_f_p(table, p)?;
    let af = field_from_prime(table, p)?;
    let params = LucasParameters::from_table(table, p)?;

    let ds: Vec<u64> = (2..=n_max).collect();
    let phi_lpf: BTreeMap<u64, Lpf> = ds
        .par_iter()
        .map(|&d| {
            phi_largest_prime(&params, d, options).map(|(value, exact)| (d, Lpf { value, exact }))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for n in 2..=n_max {
        let lpf = divisors(n)
            .into_iter()
            .filter(|&d| d > 1)
            .fold(Lpf::one(), |acc, d| acc.max(phi_lpf[&d].clone()));
        let bound = pafp_bound(table, p, n, r_hat as i64)?;
        let gated = n >= n_floor;
        let holds = gated.then(|| lpf.exceeds(bound) == Some(true));
        rows.push(PafpRow {
            n,
            phi_n: euler_phi(n),
            omega_n: omega(n),
            bound,
            lpf,
            gated,
            holds,
        });
    }
    Ok(PafpReport {
        form: table.form().name(),
        p,
        nu_f_p: nu,
        d_f: HECKE_FIELD_DEGREE,
        class_number: class_number(&af.field).ok(),
        r_hat: scan.r_hat,
        n_floor,
        scan,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    #[test]
    fn small_scan_for_delta() {
        let t = delta_series(20).unwrap();
        let s = wieferich_scan(&t, 11, 500).unwrap();
        assert!(s.all_at_least_one && s.paths_agree);
        assert!(s.r_hat >= 1);
        assert!(s.rows.iter().all(|r| r.q != 11 && r.norm <= 500));
    }

    #[test]
    fn suite_rows() {
        let t = delta_series(20).unwrap();
        let r = pafp_suite(&t, 11, 20, 200, DEFAULT_N_FLOOR, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 19);
        assert!(!r.rows[0].gated && r.rows[0].holds.is_none());
        assert!(pafp_suite(&t, 3, 20, 200, 3, &ClassifyOptions::default()).is_err());
    }
}
