//! `eigenlpf`: coefficient caches, invariant suites and plot-ready reports.

mod cache;
mod config;
mod emit;
mod report;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, ReportKind, RunConfig, Suite};

/// Exit statuses.
pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<eigenlpf::Error> for Failure {
    fn from(e: eigenlpf::Error) -> Self {
        use eigenlpf::Error::*;
        let code = match e {
            Io { .. } => EXIT_IO,
            Checksum { .. } | Malformed { .. } | Version(_) | DescriptorMismatch { .. } => {
                EXIT_INVARIANT
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "eigenlpf", version, about = "Largest prime factors of level-1 eigenform coefficients")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Directory holding coefficient tables.
    #[arg(long, global = true, default_value = "cache")]
    cache_dir: PathBuf,
    /// Directory reports are written to.
    #[arg(long, global = true, default_value = "reports")]
    report_dir: PathBuf,
    /// Seed for the probabilistic primality rounds.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and cache a coefficient table.
    Gen {
        #[arg(long, default_value = "delta")]
        form: String,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        /// Overwrite an existing file even if its checksum fails.
        #[arg(long)]
        force: bool,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Fail instead of generating missing tables.
        #[arg(long)]
        no_autogen: bool,
        /// Coefficient bound for the exhaustive identities.
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        /// Prime bound for the density suite.
        #[arg(long, default_value_t = 100_000)]
        x_max: u64,
        /// Largest n in the primitive-divisor grid.
        #[arg(long, default_value_t = 40)]
        n_max: u64,
        /// Ideal norm bound for the Wieferich scans.
        #[arg(long, default_value_t = 10_000)]
        norm_limit: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Emit a CSV or JSON report.
    Report(ReportArgs),
}

#[derive(Args)]
struct ReportArgs {
    #[arg(value_enum)]
    kind: ReportKind,
    #[arg(long, default_value = "delta")]
    form: String,
    #[arg(long, default_value_t = 100_000)]
    x_max: u64,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    /// thm1, thm2, thm3, cafn2 or atkin-serre-norm.
    #[arg(long, default_value = "thm1")]
    threshold: String,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Constant for thm3 and the scaled g choices.
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// inv-loglog, c-over-log or scaled-inv-loglog.
    #[arg(long, default_value = "inv-loglog")]
    g: String,
    /// Modulus for the congruence count.
    #[arg(long, default_value_t = 691)]
    d: u64,
    #[arg(long, default_value_t = 11)]
    p: u64,
    #[arg(long, default_value_t = 200)]
    n_max: u64,
    #[arg(long, default_value_t = 10_000)]
    norm_limit: u64,
    #[arg(long, default_value_t = eigenlpf::analysis::DEFAULT_N_FLOOR)]
    n_floor: u64,
    /// Largest m in a_f(p^(2m+1)).
    #[arg(long, default_value_t = 10)]
    m_max: u32,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
    p_list: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,8,12")]
    n_list: Vec<u64>,
    /// Defaults to csv for sato-tate and json otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    no_autogen: bool,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(k) = cli.global.threads {
        if k == 0 {
            return Err(Failure::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let mut cfg = RunConfig::new(cli.global.cache_dir, cli.global.report_dir, cli.global.seed);
    match cli.command {
        Command::Gen { form, limit, force } => {
            cfg.form = form;
            cfg.x_max = limit;
            cfg.validate()?;
            cache::cmd_gen(&cfg, force)
        }
        Command::Verify {
            suite,
            no_autogen,
            limit,
            x_max,
            n_max,
            norm_limit,
            epsilon,
        } => {
            cfg.limit = limit;
            cfg.x_max = x_max;
            cfg.n_max = n_max;
            cfg.norm_limit = norm_limit;
            cfg.epsilon = epsilon;
            cfg.autogen = !no_autogen;
            cfg.validate()?;
            verify::cmd_verify(&cfg, suite)
        }
        Command::Report(a) => {
            cfg.form = a.form;
            cfg.x_max = a.x_max;
            cfg.bins = a.bins;
            cfg.threshold = a.threshold;
            cfg.epsilon = a.epsilon;
            cfg.c = a.c;
            cfg.g = a.g;
            cfg.d = a.d;
            cfg.p = a.p;
            cfg.n_max = a.n_max;
            cfg.norm_limit = a.norm_limit;
            cfg.n_floor = a.n_floor;
            cfg.m_max = a.m_max;
            cfg.p_list = a.p_list;
            cfg.n_list = a.n_list;
            cfg.format = a.format.unwrap_or(match a.kind {
                ReportKind::SatoTate => Format::Csv,
                _ => Format::Json,
            });
            cfg.autogen = !a.no_autogen;
            cfg.validate()?;
            report::cmd_report(&cfg, a.kind)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
