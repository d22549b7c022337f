use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Weights at which the level-1 cusp space is one-dimensional.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Degree of the Hecke field: every supported form has rational coefficients.
pub const HECKE_FIELD_DEGREE: u32 = 1;

/// Level of every supported form.
pub const LEVEL: u32 = 1;

/// One of the six normalized level-1 eigenforms with rational integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FormDescriptor {
    weight: u32,
}

impl FormDescriptor {
    pub const DELTA: FormDescriptor = FormDescriptor { weight: 12 };

    pub fn new(weight: u32) -> Result<Self> {
        if SUPPORTED_WEIGHTS.contains(&weight) {
            Ok(FormDescriptor { weight })
        } else {
            Err(Error::domain(format!(
                "unsupported weight {weight}: S_k(SL2(Z)) is one-dimensional only for k in {SUPPORTED_WEIGHTS:?}"
            )))
        }
    }

    pub fn all() -> impl Iterator<Item = FormDescriptor> {
        SUPPORTED_WEIGHTS.iter().map(|&weight| FormDescriptor { weight })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u32 {
        LEVEL
    }

    pub fn name(&self) -> String {
        match self.weight {
            12 => "delta".to_string(),
            k => format!("weight{k}"),
        }
    }

    /// Exponents (a, b) with f = Delta * E4^a * E6^b.
    pub(crate) fn eisenstein_exponents(&self) -> (u32, u32) {
        match self.weight {
            12 => (0, 0),
            16 => (1, 0),
            18 => (0, 1),
            20 => (2, 0),
            22 => (1, 1),
            26 => (2, 1),
            _ => unreachable!("weight validated at construction"),
        }
    }
}

impl fmt::Display for FormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (weight {}, level 1)", self.name(), self.weight)
    }
}

impl FromStr for FormDescriptor {
    type Err = Error;

    /// Accepts `delta`, `tau`, `weight<k>` or a bare weight.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let weight = match s.as_str() {
            "delta" | "tau" => 12,
            other => other
                .strip_prefix("weight")
                .unwrap_or(other)
                .parse::<u32>()
                .map_err(|_| Error::domain(format!("unknown form {s:?}")))?,
        };
        FormDescriptor::new(weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("delta".parse::<FormDescriptor>().unwrap().weight(), 12);
        assert_eq!("weight26".parse::<FormDescriptor>().unwrap().weight(), 26);
        assert_eq!("18".parse::<FormDescriptor>().unwrap().name(), "weight18");
        assert!("weight14".parse::<FormDescriptor>().is_err());
        assert!("weight24".parse::<FormDescriptor>().is_err());
        assert!("sigma".parse::<FormDescriptor>().is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in FormDescriptor::all() {
            assert_eq!(f.name().parse::<FormDescriptor>().unwrap(), f);
            let (a, b) = f.eisenstein_exponents();
            assert_eq!(12 + 4 * a + 6 * b, f.weight());
        }
    }
}
