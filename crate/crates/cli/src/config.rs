use std::path::PathBuf;

use boolfn_core::ensemble::MOMENT_MIN_SAMPLES;
use boolfn_core::{BooleanFunction, MAX_VARS};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "boolfn",
    version,
    about = "Spectral analysis of Boolean functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "BOOLFN_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral summary of one function given as a hex truth table.
    Analyze {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        hex: String,
        /// Include the full Walsh spectrum and autocorrelation.
        #[arg(long)]
        full: bool,
    },
    /// Run a Monte Carlo suite over random functions.
    Sample {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: SampleArgs,
    },
    /// Exact statistics over every function in m variables.
    Enumerate {
        #[arg(long)]
        m: u32,
        /// Allow m = 5 (2^32 functions, hours of compute).
        #[arg(long)]
        override_cost: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Moments,
    UpperTail,
    LowerTail,
    Deviation,
    Dist,
    Scgf,
    Ratios,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Moments => "moments",
            Self::UpperTail => "upper-tail",
            Self::LowerTail => "lower-tail",
            Self::Deviation => "deviation",
            Self::Dist => "dist",
            Self::Scgf => "scgf",
            Self::Ratios => "ratios",
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled functions.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0.5,1,2,4"
    )]
    pub kappa: Vec<f64>,
    #[arg(long, default_value_t = 0.8)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.3)]
    pub eta: f64,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0.5,1"
    )]
    pub t: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-0.4,-0.2,0,0.1"
    )]
    pub u: Vec<f64>,
    /// Shift for the distribution suite.
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    /// Inclusive range `LO..HI` (or `LO-HI`, or a single `M`).
    #[arg(long, value_parser = parse_m_range)]
    pub m_range: Option<(u32, u32)>,
}

fn parse_m_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((lo, hi)) => (lo, hi),
        None => (s, s),
    };
    let parse = |v: &str| {
        v.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad m range {s:?}: {e}"))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("empty m range {s:?}"));
    }
    Ok((lo, hi))
}

/// A fully validated request. Nothing is computed before this exists.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Analyze {
        function: BooleanFunction,
        full: bool,
    },
    Moments {
        m: u32,
        n: u64,
        seed: u64,
    },
    UpperTail {
        m: u32,
        n: u64,
        seed: u64,
        kappa: Vec<f64>,
    },
    LowerTail {
        ms: Vec<u32>,
        n: u64,
        seed: u64,
        alpha: f64,
        eta: f64,
    },
    Deviation {
        m: u32,
        n: u64,
        seed: u64,
        t: Vec<f64>,
    },
    Dist {
        m: u32,
        n: u64,
        seed: u64,
        a: usize,
    },
    Scgf {
        m: u32,
        n: u64,
        seed: u64,
        u: Vec<f64>,
    },
    Ratios {
        ms: Vec<u32>,
        n: u64,
        seed: u64,
    },
    Enumerate {
        m: u32,
        override_cost: bool,
    },
}

/// Why a configuration was refused.
#[derive(Debug, PartialEq, Eq)]
pub enum ConfigError {
    Usage(String),
    CostGuard(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Usage(msg.into()))
}

fn ascending(name: &str, values: &[f64]) -> Result<(), ConfigError> {
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return usage(format!("--{name} needs finite values"));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return usage(format!("--{name} values must be strictly ascending"));
    }
    Ok(())
}

fn require_m(m: Option<u32>, suite: Suite, max: u32) -> Result<u32, ConfigError> {
    match m {
        None => usage(format!("sample {} needs --m", suite.name())),
        Some(m) if !(1..=max).contains(&m) => usage(format!("--m {m} is outside [1, {max}]")),
        Some(m) => Ok(m),
    }
}

fn m_list(
    args: &SampleArgs,
    suite: Suite,
    lo_limit: u32,
    hi_limit: u32,
) -> Result<Vec<u32>, ConfigError> {
    let (lo, hi) = match (args.m_range, args.m) {
        (Some(range), _) => range,
        (None, Some(m)) => (m, m),
        (None, None) => return usage(format!("sample {} needs --m-range or --m", suite.name())),
    };
    if lo < lo_limit || hi > hi_limit {
        return usage(format!(
            "m range {lo}..{hi} is outside [{lo_limit}, {hi_limit}]"
        ));
    }
    Ok((lo..=hi).collect())
}

impl RunConfig {
    pub fn from_command(command: Command) -> Result<Self, ConfigError> {
        match command {
            Command::Analyze { m, hex, full } => {
                let function = BooleanFunction::from_hex(&hex, m)
                    .map_err(|e| ConfigError::Usage(e.to_string()))?;
                Ok(Self::Analyze { function, full })
            }
            Command::Enumerate { m, override_cost } => {
                if !(1..=MAX_VARS).contains(&m) {
                    return usage(format!("--m {m} is outside [1, {MAX_VARS}]"));
                }
                let limit = if override_cost { 5 } else { 4 };
                if m > limit {
                    let hint = if override_cost {
                        String::new()
                    } else {
                        " (m = 5 needs --override-cost and takes hours)".to_owned()
                    };
                    return Err(ConfigError::CostGuard(format!(
                        "enumeration of all functions is limited to m <= {limit}{hint}"
                    )));
                }
                Ok(Self::Enumerate { m, override_cost })
            }
            Command::Sample { suite, params } => Self::from_sample(suite, params),
        }
    }

    fn from_sample(suite: Suite, args: SampleArgs) -> Result<Self, ConfigError> {
        let (n, seed) = (args.n, args.seed);
        if n == 0 {
            return usage("--n must be positive");
        }
        match suite {
            Suite::Moments => {
                let m = require_m(args.m, suite, boolfn_core::ensemble::MOMENT_MAX_VARS)?;
                if n < MOMENT_MIN_SAMPLES {
                    return usage(format!("sample moments needs --n >= {MOMENT_MIN_SAMPLES}"));
                }
                Ok(Self::Moments { m, n, seed })
            }
            Suite::UpperTail => {
                let m = require_m(args.m, suite, MAX_VARS)?;
                ascending("kappa", &args.kappa)?;
                if args.kappa[0] < 0.0 {
                    return usage("--kappa values must be nonnegative");
                }
                Ok(Self::UpperTail {
                    m,
                    n,
                    seed,
                    kappa: args.kappa,
                })
            }
            Suite::LowerTail => {
                let (alpha, eta) = (args.alpha, args.eta);
                if !(alpha > 0.0 && alpha < 1.0) {
                    return usage(format!("--alpha {alpha} is not in (0, 1)"));
                }
                if !(eta > 0.0 && eta < 1.0 - alpha * alpha) {
                    return usage(format!("--eta {eta} is not in (0, 1 - alpha^2)"));
                }
                let ms = m_list(&args, suite, 1, MAX_VARS)?;
                Ok(Self::LowerTail {
                    ms,
                    n,
                    seed,
                    alpha,
                    eta,
                })
            }
            Suite::Deviation => {
                let m = require_m(args.m, suite, MAX_VARS)?;
                ascending("t", &args.t)?;
                if args.t[0] <= 0.0 {
                    return usage("--t values must be positive");
                }
                Ok(Self::Deviation {
                    m,
                    n,
                    seed,
                    t: args.t,
                })
            }
            Suite::Dist => {
                let m = require_m(args.m, suite, MAX_VARS)?;
                if args.a == 0 || args.a >= 1usize << m {
                    return usage(format!("--a {} must be in [1, 2^m)", args.a));
                }
                if n < 2 {
                    return usage("sample dist needs --n >= 2");
                }
                Ok(Self::Dist {
                    m,
                    n,
                    seed,
                    a: args.a,
                })
            }
            Suite::Scgf => {
                let m = require_m(args.m, suite, MAX_VARS)?;
                if args.u.is_empty() || args.u.iter().any(|u| !u.is_finite()) {
                    return usage("--u needs finite values");
                }
                Ok(Self::Scgf {
                    m,
                    n,
                    seed,
                    u: args.u,
                })
            }
            Suite::Ratios => {
                let ms = m_list(&args, suite, 6, 20)?;
                Ok(Self::Ratios { ms, n, seed })
            }
        }
    }
}
