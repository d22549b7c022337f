use std::path::PathBuf;

use clap::ValueEnum;
use eigenlpf::analysis::{GChoice, ThresholdSpec, DEFAULT_N_FLOOR};
use eigenlpf::cyclotomic::ClassifyOptions;
use eigenlpf::{Factorizer, FormDescriptor};
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coeffs,
    Cyclotomic,
    Quadfield,
    Densities,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    SatoTate,
    LpfDensity,
    Congruence,
    NaturalDensity,
    PrimePower,
    Theorem6,
    Pafp,
    Wieferich,
}

impl ReportKind {
    pub fn name(self) -> &'static str {
        match self {
            ReportKind::SatoTate => "sato-tate",
            ReportKind::LpfDensity => "lpf-density",
            ReportKind::Congruence => "congruence",
            ReportKind::NaturalDensity => "natural-density",
            ReportKind::PrimePower => "prime-power",
            ReportKind::Theorem6 => "theorem6",
            ReportKind::Pafp => "pafp",
            ReportKind::Wieferich => "wieferich",
        }
    }
}

/// Everything that determines the bytes of a run's output.
///
/// Defaults: `x_max = 100000`, `epsilon = 0.1`, `seed = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub form: String,
    pub x_max: u64,
    pub limit: u64,
    pub n_max: u64,
    pub norm_limit: u64,
    pub threshold: String,
    pub epsilon: f64,
    pub c: f64,
    pub g: String,
    pub bins: usize,
    pub d: u64,
    pub p: u64,
    pub n_floor: u64,
    pub m_max: u32,
    pub p_list: Vec<u64>,
    pub n_list: Vec<u64>,
    pub seed: u64,
    pub format: Format,
    pub cache_dir: PathBuf,
    pub report_dir: PathBuf,
    #[serde(skip)]
    pub autogen: bool,
}

impl RunConfig {
    pub fn new(cache_dir: PathBuf, report_dir: PathBuf, seed: u64) -> Self {
        RunConfig {
            form: "delta".into(),
            x_max: 100_000,
            limit: 10_000,
            n_max: 200,
            norm_limit: 10_000,
            threshold: "thm1".into(),
            epsilon: 0.1,
            c: 0.5,
            g: "inv-loglog".into(),
            bins: 40,
            d: 691,
            p: 11,
            n_floor: DEFAULT_N_FLOOR,
            m_max: 10,
            p_list: vec![2, 3, 5, 7, 11, 13],
            n_list: vec![3, 4, 5, 6, 8, 12],
            seed,
            format: Format::Json,
            cache_dir,
            report_dir,
            autogen: true,
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let positive = [
            ("x-max", self.x_max),
            ("limit", self.limit),
            ("n-max", self.n_max),
            ("norm-limit", self.norm_limit),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Failure::usage(format!("--{name} must be positive")));
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Failure::usage("--epsilon must be a positive number"));
        }
        if !self.c.is_finite() {
            return Err(Failure::usage("--c must be finite"));
        }
        self.form_descriptor()?;
        Ok(())
    }

    pub fn form_descriptor(&self) -> Result<FormDescriptor, Failure> {
        self.form.parse().map_err(Failure::from)
    }

    pub fn threshold_spec(&self) -> Result<ThresholdSpec, Failure> {
        let spec = match self.threshold.as_str() {
            "thm1" => ThresholdSpec::Thm1 {
                epsilon: self.epsilon,
            },
            "thm2" => ThresholdSpec::Thm2 {
                g: GChoice::parse(&self.g, self.c)?,
            },
            "thm3" => ThresholdSpec::Thm3 { c: self.c },
            "cafn2" => ThresholdSpec::Cafn2,
            "atkin-serre-norm" => ThresholdSpec::AtkinSerreNorm {
                epsilon: self.epsilon,
            },
            other => {
                return Err(Failure::usage(format!(
                    "unknown threshold {other:?} (thm1, thm2, thm3, cafn2, atkin-serre-norm)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn factorizer(&self) -> Factorizer {
        Factorizer::with_seed(self.seed)
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            seed: self.seed,
            ..ClassifyOptions::default()
        }
    }
}
