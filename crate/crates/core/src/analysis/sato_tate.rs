use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::sieve_primes;
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

/// Semicircle CDF on [-2, 2]: 1/2 + (arcsin(t/2) + (t/2) sqrt(1 - t^2/4)) / pi.
pub fn sato_tate_cdf(t: f64) -> f64 {
    let t = t.clamp(-2.0, 2.0);
    let h = t / 2.0;
    0.5 + (h.asin() + h * (1.0 - h * h).max(0.0).sqrt()) / PI
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatoTateBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub empirical: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SatoTateReport {
    pub form: String,
    pub x_max: u64,
    pub samples: u64,
    pub bins: Vec<SatoTateBin>,
    pub ks_distance: f64,
    pub max_abs_lambda: f64,
    pub all_in_interval: bool,
}

/// lambda_f(p) = a_f(p) / p^((k-1)/2) for every prime p <= x_max.
pub fn normalized_coefficients(table: &CoefficientTable, x_max: u64) -> Result<Vec<(u64, f64)>> {
    if x_max > table.limit() {
        return Err(Error::Range {
            what: "Sato-Tate scan".into(),
            needed: x_max,
            limit: table.limit(),
        });
    }
    let half = (table.form().weight() as f64 - 1.0) / 2.0;
    if x_max < 2 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(x_max)?
        .primes()
        .iter()
        .map(|&p| {
            let a = table.get(p).unwrap().to_f64().unwrap();
            (p, a / (p as f64).powf(half))
        })
        .collect())
}

/// Histogram of lambda_f(p) against the semicircle and the Kolmogorov-Smirnov distance.
pub fn sato_tate_test(table: &CoefficientTable, x_max: u64, bins: usize) -> Result<SatoTateReport> {
    if bins < 2 {
        return Err(Error::domain(format!("need at least 2 bins, got {bins}")));
    }
    let mut lambdas: Vec<f64> = normalized_coefficients(table, x_max)?
        .into_iter()
        .map(|(_, l)| l)
        .collect();
    let n = lambdas.len();
    let width = 4.0 / bins as f64;
    let mut counts = vec![0u64; bins];
    for &l in &lambdas {
        let i = (((l + 2.0) / width).floor().max(0.0) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let bins: Vec<SatoTateBin> = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let lo = -2.0 + i as f64 * width;
            let hi = if i + 1 == bins { 2.0 } else { lo + width };
            SatoTateBin {
                lo,
                hi,
                count,
                empirical: if n == 0 { 0.0 } else { count as f64 / n as f64 },
                expected: sato_tate_cdf(hi) - sato_tate_cdf(lo),
            }
        })
        .collect();

    lambdas.sort_by(f64::total_cmp);
    let nf = n as f64;
    let ks_distance = lambdas
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let f = sato_tate_cdf(l);
            (f - i as f64 / nf).abs().max(((i + 1) as f64 / nf - f).abs())
        })
        .fold(0.0, f64::max);
    let max_abs_lambda = lambdas.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(SatoTateReport {
        form: table.form().name(),
        x_max,
        samples: n as u64,
        bins,
        ks_distance,
        max_abs_lambda,
        all_in_interval: max_abs_lambda <= 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    #[test]
    fn cdf_endpoints_and_symmetry() {
        assert_eq!(sato_tate_cdf(-2.0), 0.0);
        assert!((sato_tate_cdf(2.0) - 1.0).abs() < 1e-15);
        assert!((sato_tate_cdf(0.0) - 0.5).abs() < 1e-15);
        for t in [0.1, 0.7, 1.3, 1.9] {
            let right = sato_tate_cdf(t + 0.05) - sato_tate_cdf(t);
            let left = sato_tate_cdf(-t) - sato_tate_cdf(-t - 0.05);
            assert!((right - left).abs() < 1e-14);
        }
    }

    #[test]
    fn masses_and_counts() {
        let t = delta_series(3000).unwrap();
        let r = sato_tate_test(&t, 3000, 20).unwrap();
        let mass: f64 = r.bins.iter().map(|b| b.expected).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        assert_eq!(r.bins.iter().map(|b| b.count).sum::<u64>(), r.samples);
        assert!(r.all_in_interval);
        assert!(sato_tate_test(&t, 3000, 1).is_err());
    }
}
