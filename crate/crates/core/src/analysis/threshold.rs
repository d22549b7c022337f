use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Choice of g(x) -> 0 in the p^g(p) and n^g(n) thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "g", rename_all = "kebab-case")]
pub enum GChoice {
    /// 1 / log log x
    InvLogLog,
    /// c / log x
    COverLog { c: f64 },
    /// c / log log x
    ScaledInvLogLog { c: f64 },
}

impl GChoice {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            GChoice::InvLogLog => 1.0 / x.ln().ln(),
            GChoice::COverLog { c } => c / x.ln(),
            GChoice::ScaledInvLogLog { c } => c / x.ln().ln(),
        }
    }

    /// Parse `inv-loglog`, `c-over-log` or `scaled-inv-loglog`, taking c separately.
    pub fn parse(name: &str, c: f64) -> Result<Self> {
        match name {
            "inv-loglog" => Ok(GChoice::InvLogLog),
            "c-over-log" => Ok(GChoice::COverLog { c }),
            "scaled-inv-loglog" => Ok(GChoice::ScaledInvLogLog { c }),
            _ => Err(Error::domain(format!("unknown g choice {name:?}"))),
        }
    }
}

impl fmt::Display for GChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GChoice::InvLogLog => write!(f, "inv-loglog"),
            GChoice::COverLog { c } => write!(f, "c-over-log(c={c})"),
            GChoice::ScaledInvLogLog { c } => write!(f, "scaled-inv-loglog(c={c})"),
        }
    }
}

/// Lower bound tested against P(a_f(x)) (or |a_f(x)| for the Atkin-Serre kind).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ThresholdSpec {
    /// (log x)^(1/8) (log log x)^(3/8 - eps)
    Thm1 { epsilon: f64 },
    /// x^g(x)
    Thm2 { g: GChoice },
    /// c x^(1/14) (log x)^(2/7)
    Thm3 { c: f64 },
    /// x^(1/70) (log x)^(1/7)
    Cafn2,
    /// |a_f(x)| > x^((k-3)/2 - eps), a bound on the size rather than the largest prime.
    AtkinSerreNorm { epsilon: f64 },
}

impl ThresholdSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThresholdSpec::Thm1 { epsilon } | ThresholdSpec::AtkinSerreNorm { epsilon }
                if !(epsilon > 0.0) =>
            {
                Err(Error::domain(format!("epsilon = {epsilon} must be positive")))
            }
            ThresholdSpec::Thm3 { c } if !(c > 0.0 && c < 1.0) => {
                Err(Error::domain(format!("c = {c} must lie in (0, 1)")))
            }
            ThresholdSpec::Thm2 {
                g: GChoice::COverLog { c } | GChoice::ScaledInvLogLog { c },
            } if !(c > 0.0) => Err(Error::domain(format!("c = {c} must be positive"))),
            _ => Ok(()),
        }
    }

    /// Threshold at x; `weight` only matters for the Atkin-Serre kind.
    pub fn eval(&self, x: f64, weight: u32) -> f64 {
        let l = x.ln();
        match *self {
            ThresholdSpec::Thm1 { epsilon } => l.powf(0.125) * l.ln().powf(0.375 - epsilon),
            ThresholdSpec::Thm2 { g } => x.powf(g.eval(x)),
            ThresholdSpec::Thm3 { c } => c * x.powf(1.0 / 14.0) * l.powf(2.0 / 7.0),
            ThresholdSpec::Cafn2 => x.powf(1.0 / 70.0) * l.powf(1.0 / 7.0),
            ThresholdSpec::AtkinSerreNorm { epsilon } => {
                x.powf((weight as f64 - 3.0) / 2.0 - epsilon)
            }
        }
    }

    /// Smallest x at which the threshold is evaluated (log log x must be positive).
    pub fn floor(&self) -> u64 {
        match self {
            ThresholdSpec::Thm1 { .. } | ThresholdSpec::Thm2 { .. } => 5,
            _ => 2,
        }
    }

    pub fn compares_norm(&self) -> bool {
        matches!(self, ThresholdSpec::AtkinSerreNorm { .. })
    }

    /// Lower-density floor asserted by the corresponding statement, if any.
    pub fn density_floor(&self, weight: u32) -> Option<f64> {
        let k = weight as f64;
        match self {
            ThresholdSpec::Thm3 { .. } => Some(1.0 - 2.0 / (13.0 * (k - 1.0))),
            ThresholdSpec::Cafn2 => Some(1.0 - (-cafn2_c1(weight)).exp()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ThresholdSpec::Thm1 { .. } => "thm1",
            ThresholdSpec::Thm2 { .. } => "thm2",
            ThresholdSpec::Thm3 { .. } => "thm3",
            ThresholdSpec::Cafn2 => "cafn2",
            ThresholdSpec::AtkinSerreNorm { .. } => "atkin-serre-norm",
        }
    }
}

/// c_1 = (1 - 1/(6(k-1))) log(5/4.9).
pub fn cafn2_c1(weight: u32) -> f64 {
    let k = weight as f64;
    (1.0 - 1.0 / (6.0 * (k - 1.0))) * (5.0f64 / 4.9).ln()
}

impl FromStr for GChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GChoice::parse(s, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm1_threshold_is_below_two_at_desk_scale() {
        let t = ThresholdSpec::Thm1 { epsilon: 0.1 };
        assert!(t.eval(1e5, 12) < 2.0);
        assert!(t.eval(5.0, 12) > 0.0);
    }

    #[test]
    fn floors() {
        let f = ThresholdSpec::Thm3 { c: 0.5 }.density_floor(12).unwrap();
        assert!((f - (1.0 - 2.0 / 143.0)).abs() < 1e-15);
        let c1 = cafn2_c1(12);
        assert!((c1 - (1.0 - 1.0 / 66.0) * (5.0f64 / 4.9).ln()).abs() < 1e-15);
    }

    #[test]
    fn parameter_ranges() {
        assert!(ThresholdSpec::Thm1 { epsilon: 0.0 }.validate().is_err());
        assert!(ThresholdSpec::Thm3 { c: 1.5 }.validate().is_err());
        assert!(ThresholdSpec::Thm3 { c: 0.5 }.validate().is_ok());
        assert!(GChoice::parse("nope", 1.0).is_err());
    }
}
