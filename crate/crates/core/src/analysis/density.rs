use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::lpf::{lpf_deciding, Lpf};
use super::threshold::ThresholdSpec;
use crate::arith::{factor_u64, sieve_primes, Factorizer};
use crate::eigenform::CoefficientTable;
use crate::error::{Error, Result};

/// Failing entries kept in a serialized report.
pub const FAILING_CAP: usize = 10_000;

/// Smallest n scanned for natural densities over integers.
pub const NATURAL_SCAN_FLOOR: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanDomain {
    Primes,
    Integers,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailingEntry {
    pub n: u64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub value: BigInt,
    pub lpf: Lpf,
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub form: String,
    pub domain: ScanDomain,
    pub x_max: u64,
    /// First index scanned.
    pub floor: u64,
    pub threshold: ThresholdSpec,
    pub scanned: u64,
    pub zeros: u64,
    pub passing: u64,
    pub failing_count: u64,
    pub failing: Vec<FailingEntry>,
    /// Entries beyond the cap; written to a side file, not serialized.
    #[serde(skip)]
    pub failing_overflow: Vec<FailingEntry>,
    /// Values whose largest prime is only bounded from below.
    pub inexact: u64,
    /// pi(x_max) for prime scans.
    pub pi_x_max: Option<u64>,
    /// passing / scanned over primes; (passing + zeros) / scanned over integers.
    pub density: f64,
    pub density_floor: Option<f64>,
}

impl DensityReport {
    pub fn counts_close(&self) -> bool {
        self.passing + self.failing_count + self.zeros == self.scanned
    }
}

enum Outcome {
    Zero,
    Pass { exact: bool },
    Fail(FailingEntry),
}

fn check_range(table: &CoefficientTable, x_max: u64) -> Result<()> {
    if x_max > table.limit() {
        return Err(Error::Range {
            what: "density scan".into(),
            needed: x_max,
            limit: table.limit(),
        });
    }
    Ok(())
}

fn judge(
    n: u64,
    value: &BigInt,
    spec: &ThresholdSpec,
    weight: u32,
    lpf: impl FnOnce(f64) -> Lpf,
) -> Outcome {
    if value.is_zero() {
        return Outcome::Zero;
    }
    let t = spec.eval(n as f64, weight);
    if spec.compares_norm() {
        let size = value.abs().to_f64().unwrap_or(f64::INFINITY);
        return if size > t {
            Outcome::Pass { exact: true }
        } else {
            Outcome::Fail(FailingEntry {
                n,
                value: value.clone(),
                lpf: Lpf::one(),
                threshold: t,
            })
        };
    }
    let l = lpf(t);
    match l.exceeds(t) {
        Some(true) => Outcome::Pass { exact: l.exact },
        _ => Outcome::Fail(FailingEntry {
            n,
            value: value.clone(),
            lpf: l,
            threshold: t,
        }),
    }
}

fn assemble(
    table: &CoefficientTable,
    domain: ScanDomain,
    x_max: u64,
    floor: u64,
    spec: ThresholdSpec,
    outcomes: Vec<Outcome>,
    pi_x_max: Option<u64>,
) -> DensityReport {
    let mut report = DensityReport {
        form: table.form().name(),
        domain,
        x_max,
        floor,
        threshold: spec,
        scanned: outcomes.len() as u64,
        zeros: 0,
        passing: 0,
        failing_count: 0,
        failing: Vec::new(),
        failing_overflow: Vec::new(),
        inexact: 0,
        pi_x_max,
        density: 0.0,
        density_floor: spec.density_floor(table.form().weight()),
    };
    for o in outcomes {
        match o {
            Outcome::Zero => report.zeros += 1,
            Outcome::Pass { exact } => {
                report.passing += 1;
                report.inexact += u64::from(!exact);
            }
            Outcome::Fail(e) => {
                report.failing_count += 1;
                if report.failing.len() < FAILING_CAP {
                    report.failing.push(e);
                } else {
                    report.failing_overflow.push(e);
                }
            }
        }
    }
    let good = match domain {
        ScanDomain::Primes => report.passing,
        ScanDomain::Integers => report.passing + report.zeros,
    };
    report.density = if report.scanned == 0 {
        0.0
    } else {
        good as f64 / report.scanned as f64
    };
    report
}

/// Fraction of primes floor <= p <= x_max with a_f(p) != 0 and P(a_f(p)) above the threshold.
pub fn lpf_density(
    table: &CoefficientTable,
    x_max: u64,
    spec: ThresholdSpec,
    factorizer: &Factorizer,
) -> Result<DensityReport> {
    spec.validate()?;
    check_range(table, x_max)?;
    let floor = spec.floor();
    let sieve = sieve_primes(x_max.max(2))?;
    let weight = table.form().weight();
    let primes = sieve.primes_in(floor, x_max);
    let outcomes: Vec<Outcome> = primes
        .par_iter()
        .map(|&p| {
            let a = table.get(p).expect("range checked");
            judge(p, a, &spec, weight, |t| lpf_deciding(a, t, factorizer))
        })
        .collect();
    Ok(assemble(
        table,
        ScanDomain::Primes,
        x_max,
        floor,
        spec,
        outcomes,
        Some(sieve.pi(x_max)?),
    ))
}

/// Density of {n : a_f(n) = 0 or P(a_f(n)) > threshold(n)} over 16 <= n <= x_max.
///
/// P(a_f(n)) is the maximum of P(a_f(p^e)) over the prime powers exactly dividing n.
pub fn natural_density_over_n(
    table: &CoefficientTable,
    x_max: u64,
    spec: ThresholdSpec,
    factorizer: &Factorizer,
) -> Result<DensityReport> {
    spec.validate()?;
    check_range(table, x_max)?;
    let weight = table.form().weight();
    let floor = NATURAL_SCAN_FLOOR.max(spec.floor());

    // The smallest threshold over the scan decides every prime-power factor
    // at once; anything above it needs no further factoring for this scan.
    let min_t = (floor..=x_max.max(floor))
        .map(|n| spec.eval(n as f64, weight))
        .fold(f64::INFINITY, f64::min);
    let mut powers = Vec::new();
    if x_max >= 2 {
        for &p in sieve_primes(x_max)?.primes() {
            let mut pe = p;
            loop {
                powers.push(pe);
                match pe.checked_mul(p) {
                    Some(next) if next <= x_max => pe = next,
                    _ => break,
                }
            }
        }
    }
    let cache: HashMap<u64, Lpf> = powers
        .par_iter()
        .map(|&pe| {
            let v = table.get(pe).expect("range checked");
            (pe, lpf_deciding(v, min_t, factorizer))
        })
        .collect();

    let outcomes: Vec<Outcome> = (floor..=x_max)
        .into_par_iter()
        .map(|n| {
            let a = table.get(n).expect("range checked");
            judge(n, a, &spec, weight, |t| {
                let parts = factor_u64(n);
                let combined = parts.iter().fold(Lpf::one(), |acc, &(p, e)| {
                    acc.max(cache[&p.pow(e)].clone())
                });
                if combined.exceeds(t).is_some() {
                    return combined;
                }
                parts.iter().fold(Lpf::one(), |acc, &(p, e)| {
                    let pe = p.pow(e);
                    let part = &cache[&pe];
                    acc.max(if part.exact {
                        part.clone()
                    } else {
                        Lpf {
                            value: factorizer
                                .factorize(table.get(pe).expect("range checked"))
                                .largest_prime(),
                            exact: true,
                        }
                    })
                })
            })
        })
        .collect();
    Ok(assemble(
        table,
        ScanDomain::Integers,
        x_max,
        floor,
        spec,
        outcomes,
        None,
    ))
}

/// Z(x) = #{p <= x : a_f(p) = 0}.
pub fn zero_census(table: &CoefficientTable, x_max: u64) -> Result<u64> {
    check_range(table, x_max)?;
    if x_max < 2 {
        return Ok(0);
    }
    Ok(sieve_primes(x_max)?
        .primes()
        .iter()
        .filter(|&&p| table.get(p).is_some_and(|a| a.is_zero()))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::delta_series;

    #[test]
    fn thm1_small_scan() {
        let t = delta_series(2000).unwrap();
        let r = lpf_density(
            &t,
            2000,
            ThresholdSpec::Thm1 { epsilon: 0.1 },
            &Factorizer::default(),
        )
        .unwrap();
        assert!(r.counts_close());
        assert_eq!(r.pi_x_max, Some(303));
        // floor 5 skips 2 and 3
        assert_eq!(r.scanned, 301);
        assert_eq!(r.failing_count, 0);
    }

    #[test]
    fn natural_scan_closes() {
        let t = delta_series(1000).unwrap();
        let r = natural_density_over_n(&t, 1000, ThresholdSpec::Cafn2, &Factorizer::default())
            .unwrap();
        assert!(r.counts_close());
        assert_eq!(r.scanned, 1000 - 15);
        assert!(r.density > 0.9);
    }

    #[test]
    fn norm_kind_needs_no_factoring() {
        let t = delta_series(500).unwrap();
        let r = lpf_density(
            &t,
            500,
            ThresholdSpec::AtkinSerreNorm { epsilon: 0.5 },
            &Factorizer::default(),
        )
        .unwrap();
        assert!(r.counts_close());
    }

    #[test]
    fn range_error() {
        let t = delta_series(100).unwrap();
        assert!(lpf_density(&t, 1000, ThresholdSpec::Cafn2, &Factorizer::default()).is_err());
    }
}
